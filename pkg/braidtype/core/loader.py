from __future__ import annotations

import importlib
import pkgutil
from typing import TYPE_CHECKING, Dict, Type

if TYPE_CHECKING:
    from ..commands.base import Command


def _discover_package_classes(pkg, base_cls) -> Dict[str, Type]:
    discovered: Dict[str, Type] = {}
    for m in pkgutil.iter_modules(pkg.__path__, pkg.__name__ + "."):
        module = importlib.import_module(m.name)
        for attr_name in dir(module):
            obj = getattr(module, attr_name)
            if not isinstance(obj, type) or not issubclass(obj, base_cls) or obj is base_cls:
                continue
            # intermediate bases carry shared arguments only
            if obj.__dict__.get("ABSTRACT", False):
                continue
            name = getattr(obj, "NAME", obj.__name__).lower()
            discovered[name] = obj
    return discovered


def discover_commands() -> Dict[str, "Command"]:
    from .. import commands as commands_pkg  # lazy import
    from ..commands.base import Command

    classes = _discover_package_classes(commands_pkg, Command)
    return {name: classes[name]() for name in sorted(classes)}

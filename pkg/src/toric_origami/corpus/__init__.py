"""Bundled example templates."""
from importlib import resources

from ..fileformat import loads
from ..template import OrigamiTemplate, validate_template


def names():
    return sorted(p.name[:-5] for p in resources.files(__name__).iterdir()
                  if p.name.endswith(".json"))


def path(name: str):
    """Filesystem path of a bundled template (usable as a CLI argument)."""
    return resources.files(__name__) / f"{name}.json"


def raw(name: str) -> dict:
    return loads(path(name).read_text(encoding="utf-8"))


def load(name: str) -> OrigamiTemplate:
    return validate_template(raw(name))

"""Three-level atom in a photonic-crystal cavity: dressed-state dynamics,
entanglement and number/phase entropies."""

from ._core import *  # noqa: F401,F403
from ._core import __doc__  # noqa: F401


def run_preset(name, overrides=()):
    """Run a bundled preset and return its rows."""
    return run_scenario(parse_config(preset_text(name), list(overrides), name))  # noqa: F405

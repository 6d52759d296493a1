"""Finite modal models over concrete categories.

Models are plain dicts in the same JSON layout the ``modcat`` CLI reads.
"""

import json

from . import _modcat
from ._modcat import ModcatError, ParseError, functors, normalize

__all__ = [
    "ModcatError",
    "ParseError",
    "announce",
    "check_functor",
    "evaluate",
    "functors",
    "laws",
    "normalize",
    "transform",
]


def _text(model):
    return model if isinstance(model, str) else json.dumps(model)


def evaluate(model, formula):
    """Worlds of ``model`` where ``formula`` holds, by name."""
    return _modcat.evaluate(_text(model), formula)


def announce(model, formula):
    return json.loads(_modcat.announce(_text(model), formula))


def transform(functor, model, agent=None):
    return json.loads(_modcat.transform(functor, _text(model), agent))


def check_functor(functor, prop, fragment=None, depth=3, trials=200, seed=0):
    return json.loads(_modcat.check_functor(functor, prop, fragment, depth, trials, seed))


def laws(kind, trials=200, seed=0):
    return json.loads(_modcat.laws(kind, trials, seed))

"""Monads on finite bases: laws, coproducts, coequalizers and colimits."""

import json

from ._core import (
    Monad,
    MoncolError,
    check_spec,
    coequalize_exceptions,
    commands,
    convergence_level,
    coproduct,
    exception_monad,
    free_monad,
    identity_monad,
    l_chain_vertices,
    powerset_monad,
    reader_monad,
    terminal_monad,
    verify_universal,
    writer_monad,
)
from ._core import run_command as _run_command


def run(command, specs=(), budget=8, depth=2, sizes=(0, 1, 2), seed=0x5EED):
    """Runs a CLI command; returns (exit_code, report dict)."""
    code, payload = _run_command(command, [str(s) for s in specs], budget, depth, list(sizes), seed)
    return code, json.loads(payload)


__all__ = [
    "Monad",
    "MoncolError",
    "check_spec",
    "coequalize_exceptions",
    "commands",
    "convergence_level",
    "coproduct",
    "exception_monad",
    "free_monad",
    "identity_monad",
    "l_chain_vertices",
    "powerset_monad",
    "reader_monad",
    "run",
    "terminal_monad",
    "verify_universal",
    "writer_monad",
]

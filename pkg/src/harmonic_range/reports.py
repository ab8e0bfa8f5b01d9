"""Shared JSON-serializable verdict type used by the checkers."""

from __future__ import annotations

from dataclasses import dataclass, field

__all__ = ["TheoremVerdict"]


@dataclass
class TheoremVerdict:
    """Outcome of a hypothesis/conclusion check on a concrete instance.

    A verdict never claims universal truth: it is a statement about the
    recorded sampling, and every False flag carries at least one witness.
    """

    theorem: str
    hypothesis_holds: bool
    hypothesis_witnesses: list = field(default_factory=list)
    conclusion_holds: bool = True
    conclusion_witnesses: list = field(default_factory=list)
    params: dict = field(default_factory=dict)
    sampling: dict = field(default_factory=dict)

    @property
    def consistent(self) -> bool:
        """Hypothesis true implies conclusion observed."""
        return (not self.hypothesis_holds) or self.conclusion_holds

    def to_dict(self) -> dict:
        return {
            "theorem": self.theorem,
            "hypothesis": {
                "holds": self.hypothesis_holds,
                "witnesses": self.hypothesis_witnesses,
            },
            "conclusion": {
                "holds": self.conclusion_holds,
                "witnesses": self.conclusion_witnesses,
            },
            "params": self.params,
            "sampling": self.sampling,
        }

"""Result type shared by every lemma checker."""

import json
from dataclasses import asdict, dataclass, field
from typing import Any, Dict, Optional


@dataclass
class LemmaCheckReport:
    """
    Outcome of one sampled inequality check.

    ``violations`` counts trials where the inequality fails by more than
    ``tolerance``; ``worst_margin`` is the largest signed excess over the
    bound (negative when every trial holds with room to spare).
    Informational checks have ``asserted`` False and always pass.
    """

    lemma_id: str
    trials: int
    violations: int
    worst_margin: float
    tolerance: float
    asserted: bool = True
    seed: Optional[int] = None
    config: Dict[str, Any] = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return not self.asserted or self.violations == 0

    def merge(self, other: "LemmaCheckReport") -> "LemmaCheckReport":
        """Combine two partial runs of the same check."""
        if other.lemma_id != self.lemma_id:
            raise ValueError(f"Cannot merge '{other.lemma_id}' into '{self.lemma_id}'")
        return LemmaCheckReport(
            lemma_id=self.lemma_id,
            trials=self.trials + other.trials,
            violations=self.violations + other.violations,
            worst_margin=max(self.worst_margin, other.worst_margin),
            tolerance=max(self.tolerance, other.tolerance),
            asserted=self.asserted or other.asserted,
            seed=self.seed,
            config={**other.config, **self.config},
        )

    def to_dict(self) -> Dict[str, Any]:
        payload = asdict(self)
        payload["passed"] = self.passed
        return payload

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, default=float)

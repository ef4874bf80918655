"""Machine-checkable distance bound certificates.

A certificate packages a claimed upper or lower bound on the balanced
curve graph distance together with enough inline geometry that every
local claim can be re-verified bit-exactly from scratch.  Projection
hops cite the uniform diameter bound (8) for admissible projection
sets; those citations and the orbit-invariance tags are the only
non-local steps, and they are whitelisted explicitly.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from .curveio import format_fraction, parse_fraction

HOP_ADJACENT = "adjacent"
HOP_PROJECTION = "projection"
HOP_FALLBACK3 = "fallback3"

WEIGHTS = {HOP_ADJACENT: 1, HOP_PROJECTION: 8, HOP_FALLBACK3: 3}


@dataclass
class BoundCertificate:
    kind: str                    # "upper" | "lower" | "upper-orbit"
    value: int
    epsilon: Fraction
    alpha: str                   # curve text
    beta: str
    chain: list[str] = field(default_factory=list)
    hops: list[dict] = field(default_factory=list)
    extra: dict = field(default_factory=dict)

    def to_json(self) -> str:
        return json.dumps({
            "kind": self.kind,
            "value": self.value,
            "epsilon": format_fraction(self.epsilon),
            "alpha": self.alpha,
            "beta": self.beta,
            "chain": self.chain,
            "hops": self.hops,
            "extra": self.extra,
        }, indent=1, sort_keys=True)

    @staticmethod
    def from_json(text: str) -> "BoundCertificate":
        d = json.loads(text)
        return BoundCertificate(
            kind=d["kind"],
            value=int(d["value"]),
            epsilon=parse_fraction(d["epsilon"]),
            alpha=d["alpha"],
            beta=d["beta"],
            chain=list(d.get("chain", [])),
            hops=list(d.get("hops", [])),
            extra=dict(d.get("extra", {})),
        )

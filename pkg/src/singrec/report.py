"""Classification reports: the stable JSON surface and a readable text form."""

from __future__ import annotations

import json
import time
from dataclasses import dataclass, field

import numpy as np

from .classification import Classification, Kind
from .expr import MapGerm
from .frontal import DEFAULT_MAX_K, FrontalGerm, JetMap, NormalSpec, analyze_frontal
from .germ import classify_corank1_jets, differential_from_jets
from .jets import DEFAULT_ORDER, DEFAULT_TOL, Tolerance


@dataclass
class Report:
    command: str
    input: dict
    classification: Classification
    corank: int | None = None
    diagnostics: dict = field(default_factory=dict)
    tolerances: dict = field(default_factory=dict)
    timing_ms: float | None = None
    extra: dict = field(default_factory=dict)

    @property
    def exit_code(self) -> int:
        return 0 if self.classification.definite else 2

    def to_dict(self) -> dict:
        out = {
            "command": self.command,
            "input": self.input,
            "classification": self.classification.label,
            "k": self.classification.k,
            "sign": {1: "+", -1: "-", None: None}[self.classification.sign],
            "reasons": list(self.classification.reasons),
            "corank": self.corank,
            "diagnostics": self.diagnostics,
            "tolerances": self.tolerances,
        }
        out.update(self.extra)
        return _sanitize(out)

    def to_json(self) -> str:
        # Deterministic: sorted keys, floats at full round-trip precision,
        # no timing field (wall time varies between identical invocations).
        return json.dumps(self.to_dict(), sort_keys=True, indent=2)

    def to_text(self) -> str:
        lines = [f"classification: {self.classification.label}"
                 f"  ({self.classification.describe()})"]
        for key, val in sorted(self.input.items()):
            lines.append(f"  {key}: {val}")
        if self.corank is not None:
            lines.append(f"  corank: {self.corank}")
        for key, val in sorted(self.diagnostics.items()):
            if key == "corank":
                continue
            if key == "psi_coefficients":
                val = [float(f"{x:.6g}") for x in val]
            lines.append(f"  {key}: {val}")
        for key, val in sorted(self.extra.items()):
            lines.append(f"  {key}: {val}")
        if self.timing_ms is not None:
            lines.append(f"  time: {self.timing_ms:.1f} ms")
        return "\n".join(lines)


def _sanitize(obj):
    """Make a JSON-stable copy: numpy scalars to floats at 17 significant digits."""
    if isinstance(obj, dict):
        return {str(k): _sanitize(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_sanitize(v) for v in obj]
    if isinstance(obj, (np.floating, float)):
        return float(f"{float(obj):.17g}")
    if isinstance(obj, (np.integer,)):
        return int(obj)
    if isinstance(obj, np.bool_):
        return bool(obj)
    return obj


def run_classification(
    germ_map: MapGerm | JetMap,
    normal: NormalSpec = "auto",
    order: int = DEFAULT_ORDER,
    tol: Tolerance = DEFAULT_TOL,
    max_k: int = DEFAULT_MAX_K,
) -> Report:
    """Full decision tree: corank analysis, phi-criteria, then the frontal chain.

    The two recognition families are mutually exclusive (cross cap and S1
    germs are never frontal at the singular point), so the first definite
    answer wins; otherwise the failure reasons of both are merged.
    """
    start = time.perf_counter()
    fjets = germ_map.jets(order)
    diffdata = differential_from_jets(fjets, tol)
    germ_cls = classify_corank1_jets(fjets, tol)
    diagnostics = dict(germ_cls.diagnostics)
    final = germ_cls

    if diffdata.corank == 1:
        analysis = analyze_frontal(FrontalGerm(germ_map, normal), order, tol, max_k)
        frontal_cls = analysis.classification
        if germ_cls.definite and germ_cls.kind is not Kind.REGULAR:
            # cross cap / S1 germs are never frontal there; record the attempt
            diagnostics["frontal_attempt"] = list(frontal_cls.reasons) or [
                frontal_cls.label
            ]
        else:
            for key, val in frontal_cls.diagnostics.items():
                diagnostics.setdefault(key, val)
            if frontal_cls.definite:
                final = frontal_cls
            else:
                reasons = tuple(dict.fromkeys(germ_cls.reasons + frontal_cls.reasons))
                final = Classification(
                    Kind.UNRECOGNIZED, reasons=reasons, diagnostics=diagnostics
                )

    normal_mode = normal if isinstance(normal, str) else "explicit"
    if isinstance(germ_map, MapGerm):
        echo = {"map": str(germ_map), "point": list(germ_map.base_point)}
    else:
        echo = {"map": "<jet-backed germ>", "point": [0.0, 0.0]}
    return Report(
        command="classify",
        input={**echo, "normal": normal_mode},
        classification=final,
        corank=diffdata.corank,
        diagnostics=diagnostics,
        tolerances={"abs": tol.abs, "rel": tol.rel, "order": order, "max_k": max_k},
        timing_ms=(time.perf_counter() - start) * 1e3,
    )

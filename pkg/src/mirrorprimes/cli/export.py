"""GBS1 instance files.

    GBS1 <format> <e> <k>
    P <primorial>
    ROW <p_i> <u_i> : <b ...>        one line per row, first `depth` candidates
    BOUNDS <lo> <hi>                 subset-sum only, doubled form over the chosen b
"""

from __future__ import annotations

from ..domain import build_domain, canonical_b
from ..search.partition import knapsack_bounds

FORMATS = ("subset-sum", "csp")


def render_instance(e: int, fmt: str, depth: int, b=None) -> str:
    if fmt not in FORMATS:
        raise ValueError(f"unknown format {fmt!r}")
    if depth < 1:
        raise ValueError("depth must be positive")
    domain = build_domain(e)
    basis = domain.basis
    lines = [f"GBS1 {fmt} {e} {basis.k}", f"P {basis.P}"]
    for row in domain.rows:
        values = " ".join(str(v) for v in row.prefix(depth)[:depth])
        lines.append(f"ROW {row.p} {row.u} : {values}")
    if fmt == "subset-sum":
        if b is None:
            b = canonical_b(e, basis)
        if len(b) != basis.k:
            raise ValueError(f"expected {basis.k} residues, got {len(b)}")
        lo, hi = knapsack_bounds(e, [v * u for v, u in zip(b, basis.weights_unit)])
        lines.append(f"BOUNDS {lo} {hi}")
    return "\n".join(lines) + "\n"


def parse_instance(text: str) -> dict:
    """Inverse of render_instance, for consumers and round-trip tests."""
    lines = text.splitlines()
    magic, fmt, e, k = lines[0].split()
    if magic != "GBS1":
        raise ValueError("not a GBS1 instance")
    out = {"format": fmt, "e": int(e), "k": int(k), "rows": [], "bounds": None}
    for line in lines[1:]:
        tag, _, rest = line.partition(" ")
        if tag == "P":
            out["P"] = int(rest)
        elif tag == "ROW":
            head, _, tail = rest.partition(" : ")
            p, u = head.split()
            out["rows"].append((int(p), int(u), [int(v) for v in tail.split()]))
        elif tag == "BOUNDS":
            lo, hi = rest.split()
            out["bounds"] = (int(lo), int(hi))
        else:
            raise ValueError(f"unknown line tag {tag!r}")
    return out

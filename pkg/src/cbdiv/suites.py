"""Sweeps over the labelings covered by the explicit B_r / D_r constructions."""
from __future__ import annotations

from .certificate import (
    LabeledTuple,
    check_certificate,
    closed_form_cut_B,
    closed_form_cut_D,
    cut_flow,
    paper_weighting_B,
    paper_weighting_D,
)
from .divisor import all_partitions, conformal_blocks_divisor
from .fusion import rank_level_one_closed_form


def theorem1_instances(family: str, max_n: int, min_rank: int, max_rank: int):
    """Labeled tuples covered by the explicit constructions, in canonical order."""
    for r in range(min_rank, max_rank + 1):
        for n in range(4, max_n + 1):
            for n1 in range(2, n - 1):
                n2 = n - n1
                if family == "B":
                    if n2 % 2 == 0:
                        yield LabeledTuple.from_counts("B", r, n1, n2)
                else:
                    for k in range(n2 + 1):
                        lt = LabeledTuple.from_counts("D", r, n1, n2, k)
                        if rank_level_one_closed_form(lt.tables(), lt.weights()):
                            yield lt


def certify_instance(lt: LabeledTuple) -> tuple[bool, str]:
    """Full certificate check plus closed-form cut agreement for one instance."""
    tables = lt.tables()
    D = conformal_blocks_divisor(tables, 1, lt.weights())
    if lt.family == "B":
        w, closed = paper_weighting_B(lt), closed_form_cut_B
    else:
        w, closed = paper_weighting_D(lt), closed_form_cut_D
    report = check_certificate(D, w)
    closed_ok = True
    for p in all_partitions(lt.n):
        a1 = sum(lt.is_vector(i) for i in p.side)
        a2 = len(p.side) - a1
        if closed(lt, a1, a2, lt.n1 - a1, lt.n2 - a2) != cut_flow(w, p):
            closed_ok = False
            break
    ok = report.verdict and closed_ok
    kinds = ",".join(f"w{k}" for k in lt.kinds)
    line = (f"{lt.family}{lt.rank} [{kinds}] verdict={report.verdict} "
            f"min_slack={report.min_slack} closed_form={'ok' if closed_ok else 'MISMATCH'}")
    return ok, line

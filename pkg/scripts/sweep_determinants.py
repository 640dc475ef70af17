"""Brute-force vs closed-form determinant sweep over a family of bicharacters.

    python3 scripts/sweep_determinants.py --family rank1 --orders 4 6 8 10 --max-height 6
    python3 scripts/sweep_determinants.py --family a2 --orders 6 8 10 --max-height 4
"""
from __future__ import annotations

import argparse
import json
import time
from dataclasses import asdict, dataclass, field
from typing import List

from shapoval.bicharacter import Bicharacter
from shapoval.errors import CapExceededError, HypothesisError
from shapoval.exactfield import UnitValue
from shapoval.nicholsoracle import NicholsOracle
from shapoval.shapformula import CARTAN_TYPES, SYMMETRIZERS, pbw_dim, shapdet_formula, weights_up_to
from shapoval.u0ring import equal_up_to_unit
from shapoval.weylgroupoid import roots_of


@dataclass
class SweepConfig:
    family: str = "rank1"
    orders: List[int] = field(default_factory=lambda: [4, 6, 8])
    max_height: int = 6


def members(cfg: SweepConfig):
    for n in cfg.orders:
        for e in range(1, n):
            q = UnitValue.zeta(n, e)
            if cfg.family == "rank1":
                yield f"q=zeta{n}^{e}", Bicharacter(((q,),))
            else:
                # Cartan type with q_ii = q^2; skip q^2 = 1 where the formula does not apply
                if (q ** 2).is_one():
                    continue
                yield f"{cfg.family.upper()} q=zeta{n}^{e}", Bicharacter.cartan_type(
                    CARTAN_TYPES[cfg.family.upper()], SYMMETRIZERS[cfg.family.upper()], q)


def run(cfg: SweepConfig) -> list:
    rows = []
    for label, chi in members(cfg):
        t0 = time.perf_counter()
        try:
            _, rec = roots_of(chi)
        except (CapExceededError, HypothesisError) as exc:
            rows.append({"bicharacter": label, "class": "-", "roots": 0,
                         "status": f"skipped: {exc}", "seconds": round(time.perf_counter() - t0, 3)})
            continue
        o = NicholsOracle(chi)
        degrees = weights_up_to(chi.rank, cfg.max_height)
        try:
            bad = [a for a in degrees
                   if o.dim(a) != pbw_dim(rec, a)
                   or not equal_up_to_unit(shapdet_formula(chi, rec, a).expand(), o.det_brute(a))]
            status = "ok" if not bad else f"mismatch at {bad}"
        except HypothesisError as exc:
            status = f"skipped: {exc}"
        rows.append({"bicharacter": label, "class": rec.klass, "roots": len(rec.positive_roots),
                     "status": status, "seconds": round(time.perf_counter() - t0, 3)})
    return rows


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    ap.add_argument("--family", choices=["rank1", "a2", "b2"], default="rank1")
    ap.add_argument("--orders", type=int, nargs="+", default=[4, 6, 8])
    ap.add_argument("--max-height", type=int, default=6)
    ap.add_argument("--json", action="store_true")
    args = ap.parse_args()
    cfg = SweepConfig(args.family, args.orders, args.max_height)
    rows = run(cfg)
    if args.json:
        print(json.dumps({"config": asdict(cfg), "rows": rows}, indent=2))
        return
    for r in rows:
        print(f"{r['bicharacter']:22} {r['class']:4} |R+|={r['roots']:<2} {r['seconds']:7.3f}s  {r['status']}")


if __name__ == "__main__":
    main()

#!/usr/bin/env python3
"""
Desk-scale Acceptance Validation
Checks the flocking regime, the FOV fragmentation trend and wall degradation
on full-length runs (N=10, T=20000, 20 repetitions per cell)
"""

import logging
import sys

import click

from services.harness import sweep
from shared.models import Arena, SimConfig, SweepSpec

FLOCK_ALPHA0 = [0.5, 1.0, 1.5, 2.0]
FLOCK_BETA0 = [0.05, 0.25, 0.5, 1.0]


def validate(reps: int, workers: int, seed: int) -> int:
    """Run all three checks and print a pass/fail report"""

    print("=" * 70)
    print("VISION SWARM - DESK-SCALE ACCEPTANCE VALIDATION")
    print("=" * 70)

    results = {"passed": 0, "failed": 0}
    base = SimConfig(seed=seed)

    # 1. Flocking regime
    print("\n[1/3] FLOCKING REGIME (full FOV, torus)")
    print("-" * 70)

    spec = SweepSpec(
        alpha0_values=FLOCK_ALPHA0, beta0_values=FLOCK_BETA0, fov_fractions=[1.0],
        repetitions=reps, base=base,
    )
    _, table = sweep(spec, workers=workers)
    flocking = table[
        (table["P"] > 0.8) & (table["full_cohesion_frac"] >= 0.75) & (table["R_o_sim"] < 1)
    ]
    if flocking.empty:
        print(f"  [FAIL] No flocking cell among {len(table)} cells")
        results["failed"] += 1
        print("\n  Remaining checks need a flocking cell, stopping")
        return 1

    best = flocking.sort_values("P", ascending=False).iloc[0]
    alpha0, beta0 = float(best["alpha0"]), float(best["beta0"])
    print(f"  [OK] {len(flocking)} flocking cells, best alpha0={alpha0}, beta0={beta0}, "
          f"P={best['P']:.3f}")
    results["passed"] += 1

    # 2. Narrow FOV fragments the group
    print("\n[2/3] FOV FRAGMENTATION TREND")
    print("-" * 70)

    spec = SweepSpec(
        alpha0_values=[alpha0], beta0_values=[beta0], fov_fractions=[0.25, 1.0],
        repetitions=reps, base=base,
    )
    _, table = sweep(spec, workers=workers)
    narrow = table[table["fov"] == 0.25].iloc[0]
    full = table[table["fov"] == 1.0].iloc[0]
    if narrow["N_clus_max"] <= full["N_clus_max"] and narrow["P"] < full["P"]:
        print(f"  [OK] 25% FOV: P={narrow['P']:.3f}, N_clus_max={narrow['N_clus_max']:.2f} "
              f"vs 100%: P={full['P']:.3f}, N_clus_max={full['N_clus_max']:.2f}")
        results["passed"] += 1
    else:
        print(f"  [FAIL] 25% FOV: P={narrow['P']:.3f}, N_clus_max={narrow['N_clus_max']:.2f} "
              f"vs 100%: P={full['P']:.3f}, N_clus_max={full['N_clus_max']:.2f}")
        results["failed"] += 1

    # 3. Walls lower polarization
    print("\n[3/3] WALL DEGRADATION (50% FOV)")
    print("-" * 70)

    polarization = {}
    for boundary in ("periodic", "reflective"):
        spec = SweepSpec(
            alpha0_values=[alpha0], beta0_values=[beta0], fov_fractions=[0.5],
            repetitions=reps,
            base=base.model_copy(update={"arena": Arena(boundary=boundary)}),
        )
        _, table = sweep(spec, workers=workers)
        polarization[boundary] = float(table["P"].iloc[0])

    if polarization["reflective"] < polarization["periodic"]:
        print(f"  [OK] walls P={polarization['reflective']:.3f} "
              f"< torus P={polarization['periodic']:.3f}")
        results["passed"] += 1
    else:
        print(f"  [FAIL] walls P={polarization['reflective']:.3f} "
              f">= torus P={polarization['periodic']:.3f}")
        results["failed"] += 1

    print("\n" + "=" * 70)
    print(f"RESULTS: {results['passed']} passed, {results['failed']} failed")
    print("=" * 70)
    return 1 if results["failed"] else 0


@click.command()
@click.option("--reps", type=click.IntRange(min=1), default=20, show_default=True)
@click.option("--workers", type=click.IntRange(min=1), default=1, show_default=True)
@click.option("--seed", type=click.IntRange(0, 2**64 - 1), default=0, show_default=True)
def main(reps, workers, seed):
    """Desk-scale acceptance checks"""
    logging.basicConfig(level=logging.WARNING)
    sys.exit(validate(reps, workers, seed))


if __name__ == "__main__":
    main()

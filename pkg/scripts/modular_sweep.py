"""Modular phase sweep on a weighted four-point base.

Shows the phase picked up by each matrix unit under scaling, then checks
multiplicativity and expectation-equivariance over random parameters and
reports the worst float gap against the 1e-12 working tolerance.
"""

import cmath
import random
import sys
from fractions import Fraction

from amalgam.fmalg import (
    FiniteBase, FiniteRelation, FMElement, coefficient_gap, modular_scale,
    normalizing_groupoid,
)

WEIGHTS = (("p0", Fraction(1, 2)), ("p1", Fraction(1, 4)),
           ("p2", Fraction(1, 8)), ("p3", Fraction(1, 8)))


def phase_table(relation, t):
    print("t = %+.3f" % t)
    for (x, y) in sorted(relation.pairs):
        if x >= y:
            continue
        scaled = modular_scale(FMElement.unit(relation, x, y), t)
        value = complex(scaled.coeffs[(x, y)])
        print("  e[%s,%s] -> phase %+.6f%+.6fi  (arg %+.4f)"
              % (x, y, value.real, value.imag, cmath.phase(value)))


def main(argv):
    samples = int(argv[1]) if len(argv) > 1 else 40
    base = FiniteBase.weighted(WEIGHTS)
    full = FiniteRelation.full(base)
    phase_table(full, 1.0)
    phase_table(full, -2.5)

    rng = random.Random(7)
    units = [FMElement.unit(full, x, y) for (x, y) in sorted(full.pairs)]
    worst = 0.0
    for _ in range(samples):
        t = rng.uniform(-25.0, 25.0)
        for u in units:
            for v in units:
                gap = coefficient_gap(modular_scale(u * v, t),
                                      modular_scale(u, t) * modular_scale(v, t))
                worst = max(worst, gap)
        for u in units:
            worst = max(worst, coefficient_gap(
                modular_scale(u, t).expectation(),
                modular_scale(u.expectation(), t)))

    count = len(normalizing_groupoid(full))
    print("\nmultiplicativity over %d random t: worst gap %.3e (tol 1e-12)"
          % (samples, worst))
    print("normalizing partial isometries on the full relation: %d" % count)
    return 0 if worst <= 1e-12 else 1


if __name__ == "__main__":
    sys.exit(main(sys.argv))

"""The multi-point dynamic and its avalanche statistics.

Iterating single waves over a finite point set converges to the pointwise
smallest series that is non-smooth at every point; on rational data the
increments live on a fixed grid, so the iteration stabilizes exactly after
finitely many steps and the final state does not depend on the order of the
waves.  Each wave's avalanche (the strict-increase region) has a rational
area; the harness collects those areas over seeded random trials.
"""

from fractions import Fraction as F

from tropwave import (QPolygon, Schedule, avalanche_experiment,
                      distance_function, evaluate, run_dynamics, zero_series)

box = QPolygon.box(0, 0, 3, 3)
points = [(F(1), F(1)), (F(2), F(2)), (F(3, 2), F(1, 2))]

forward = run_dynamics(zero_series(box), points, Schedule("round_robin"))
backward = run_dynamics(zero_series(box), list(reversed(points)))
print("forward: ", forward.stopped_reason, "after", forward.steps, "steps")
print("backward:", backward.stopped_reason, "after", backward.steps, "steps")
print("same final series:", forward.final == backward.final)
print("final:", forward.final)

# the result is bounded by |P| times the distance function
l = distance_function(box)
z = (F(3, 2), F(3, 2))
print(f"\nbound at {z}: G_P 0 = {evaluate(forward.final, z)} <= "
      f"{len(points)} * l = {len(points) * evaluate(l, z)}")

print("\navalanche log:")
for ev in forward.events:
    print(f"  step {ev.step}: monomial {ev.monomial} += {ev.increment}, "
          f"area {ev.avalanche_area}")

# the statistics harness: deterministic for a fixed seed
stats = avalanche_experiment(QPolygon.box(0, 0, 1, 1), n=6, trials=5, seed=99)
print(f"\nexperiment: {stats['event_count']} avalanches over "
      f"{stats['config']['trials']} trials")
print("largest areas:", [str(a) for a in stats["areas"][-5:]])
print("hill tail estimate:", stats["hill"])

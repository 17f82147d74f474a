"""Derivative-based reverses and two-sided refinements of the chain gaps.

Run:  python3 demos/03_derivative_bounds.py
"""

from meanbounds import (
    curvature_gap_bounds,
    deriv_gap_bounds,
    derivative_bounds,
    get_builtin,
    identric_ratio_refinement,
    identric_ratio_reverse,
    logmean_diff_refinement,
    logmean_diff_reverse,
    midpoint_gap_bounds,
    trapezoid_gap_bounds,
)

exp = get_builtin("exp")
neg_log = get_builtin("neg-log")


def show(tag, rep):
    print(f"  {tag:<28} {rep.lower_bound: .6e} <= {rep.gap: .6e} <= "
          f"{rep.upper_bound: .6e}  pass={rep.passed}")


# Exact derivative bounds for the builtins come from monotonicity.
print("== exact (K, m, M) on [1, 2] ==")
for f in (exp, neg_log):
    print(f"  {f.name:<8}", derivative_bounds(f, 1.0, 2.0))

# Classical two-sided bounds for the trapezoid and midpoint gaps.
print("\n== trapezoid / midpoint gap bounds, f = exp on [0, 1] ==")
show("trapezoid", trapezoid_gap_bounds(exp, 0.0, 1.0))
show("midpoint", midpoint_gap_bounds(exp, 0.0, 1.0))

# |f'| <= K bounds both central gaps of the seven-term chain.
print("\n== K-bounds on the chain gaps, f = exp on [1, 2], v = 1/4 ==")
for rep in deriv_gap_bounds(exp, 1.0, 2.0, 0.25):
    show(rep.name, rep)

# m <= f'' <= M pins them two-sidedly.
print("\n== curvature sandwiches, f = -log on [1, 3], v = 2/3 ==")
for rep in curvature_gap_bounds(neg_log, 1.0, 3.0, 2.0 / 3.0):
    show(rep.name, rep)

# Specialized to f = exp / f = -log these become statements about the
# weighted logarithmic and identric means themselves.
print("\n== mean-level reverses and refinements at (a, b, v) = (1, 2, 1/4) ==")
for rep in logmean_diff_reverse(1.0, 2.0, 0.25):
    show("reverse " + rep.name, rep)
for rep in logmean_diff_refinement(1.0, 2.0, 0.25):
    show("refine " + rep.name, rep)
for rep in identric_ratio_reverse(1.0, 2.0, 0.25):
    show("ratio-rev " + rep.name, rep)
for rep in identric_ratio_refinement(1.0, 2.0, 0.25):
    show("ratio-ref " + rep.name, rep)

# The ratio-type checks run on logarithms, so extreme spreads stay finite.
print("\n== extreme spread survives in the log domain ==")
for rep in identric_ratio_reverse(1e-3, 1e3, 0.5):
    show(rep.name, rep)

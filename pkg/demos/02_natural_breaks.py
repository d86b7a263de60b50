"""Discretize a one-dimensional spread of values with natural breaks.

Run from the repository root:

    python demos/02_natural_breaks.py
"""

from triway import assign_bin, fit_jenks, within_class_ssd

values = [1, 2, 10, 11, 50]
breaks = fit_jenks(values, k=3)
print(f"data: {values}")
print(f"breaks (class upper bounds): {breaks.breaks}")
print(f"within-class SSD: {breaks.ssd}  (exact: {within_class_ssd(values, breaks)})")
for x in (0, 1, 2, 2.5, 10, 11, 49, 50, 99):
    print(f"  {x:>5} -> bin {assign_bin(breaks, x)}")

print()
# clustered similarity scores, like the ones the feature extractor emits
scores = [-0.92, -0.88, -0.45, -0.41, -0.40, 0.02, 0.05, 0.51, 0.55, 0.97, 1.0]
b5 = fit_jenks(scores, k=5)
print(f"similarity scores: {scores}")
print(f"five-bin breaks: {tuple(round(x, 3) for x in b5.breaks)}")
print("assignments:", [assign_bin(b5, s) for s in scores])

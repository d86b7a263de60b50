"""Three-way regions on a 10-object toy table at two threshold pairs.

Run from the repository root:

    python demos/03_three_way_regions.py
"""

from triway import (InfoRow, ThresholdPair, accuracy, coverage,
                    group_classes, trisect)

rows = []
for i in range(4):
    rows.append(InfoRow(f"pure{i}", 0, 0, 0, 0, target=1))
for i in range(4):
    rows.append(InfoRow(f"mixed{i}", 1, 0, 0, 0, target=1 if i < 2 else 0))
for i in range(2):
    rows.append(InfoRow(f"legit{i}", 2, 0, 0, 0, target=0))
table = group_classes(rows)

print("classes (conditional satire probability / size):")
for cls in table.classes:
    print(f"  {cls.keys[0]}: Pr = {cls.conditional}  ({cls.total} objects)")

for alpha, beta in ((1, 0), (0.5, 0.4)):
    t = ThresholdPair(alpha, beta)
    tri = trisect(table, t)
    print(f"\nthresholds {t}:")
    print(f"  accept {sorted(tri.pos)}, reject {sorted(tri.neg)}, "
          f"defer {sorted(tri.bnd)}")
    print(f"  accuracy = {float(accuracy(table, tri)):.3f}, "
          f"coverage = {float(coverage(table, tri)):.3f}")

print("\nAt (1, 0) only the pure classes are decided: perfect accuracy,")
print("poor coverage. Widening to (0.5, 0.4) decides everything at the")
print("cost of the mixed class's error rate.")

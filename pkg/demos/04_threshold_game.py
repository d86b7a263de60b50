"""Learn decision thresholds by repeated accuracy-vs-coverage games.

Run from the repository root:

    python demos/04_threshold_game.py
"""

from triway import (GameConfig, InfoRow, group_classes, render_trace_text,
                    run_repetition)

# a graded probability spectrum: nearly-pure legitimate bands, mildly
# impure satirical bands, so both players keep trading until the
# thresholds meet in the middle
bands = [(10, 10),
         (91, 100), (81, 100), (71, 100), (61, 100), (51, 100), (41, 100),
         (0, 10),
         (1, 50), (6, 50), (11, 50), (16, 50), (21, 50)]
rows = []
for ci, (satire, total) in enumerate(bands):
    for k in range(total):
        rows.append(InfoRow(f"c{ci}o{k}", ci, 0, 0, 0,
                            target=1 if k < satire else 0))
table = group_classes(rows)

cfg = GameConfig(step="0.1")
final, trace = run_repetition(table, cfg)
print(render_trace_text(trace, cfg))
print()
print(f"accuracy player kept raising beta, coverage player kept lowering")
print(f"alpha, until no further move stayed inside 0 <= beta < alpha <= 1.")
print(f"learned thresholds: {final}")

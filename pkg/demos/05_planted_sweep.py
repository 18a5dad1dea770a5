"""
Detected violation against the planted optimum
===============================================

For each planted graph the tester runs with r = rbar + 1 and delta_cap = 30.
A reject whose witness_R stays at or below r + 30 is a hit.
"""

from rrobust.cli import fig3_rows

left = [(f"rbar={k}", 70, k) for k in (4, 6, 8, 10, 12)]
right = [(f"size={s}", s, 10) for s in (30, 50, 70)]

for title, settings in (("fixed |A|=|B|=70", left), ("fixed rbar=10", right)):
    print(title)
    for row in fig3_rows(settings):
        mark = "hit" if row["detected_R"] <= row["threshold"] else "miss"
        print(f"  {row['setting']:>8}  detected {row['detected_R']:>3}  "
              f"threshold {row['threshold']}  {mark}  {row['seconds']}s")

# the same table as CSV: rrobust fig3 --rbar-list 4,6,8,10,12 -o left.csv

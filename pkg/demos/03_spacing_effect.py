"""
Massed versus spaced practice
=============================

Ten practice events, either one second apart or a hundred seconds apart,
both ending at the same moment. Under a constant decay the crammed traces
are younger at test and win. With spacing-sensitive decay a trace laid
down soon after another decays faster, and the spaced schedule wins.
"""

from actrsim.experiments import spacing

schedules = {"massed": [1.0] * 9, "spaced": [100.0] * 9}

for mode in ("constant", "as91", "pa08"):
    print(mode)
    for name, activation, recall in spacing(schedules, mode, test_delay=1e4):
        print(f"  {name:7s} activation {activation:+.3f}   recall probability {recall:.3f}")

# the spacing advantage grows with the delay before the test
print("\nas91, advantage of spaced over massed by test delay")
for delay in (10.0, 100.0, 1e3, 1e4, 1e5):
    rows = dict((r[0], r[1]) for r in spacing(schedules, "as91", test_delay=delay))
    print(f"  {delay:8.0f} s: {rows['spaced'] - rows['massed']:+.3f}")

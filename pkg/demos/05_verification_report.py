"""Grid verification and machine-readable reports.

Symbolic grids expand the closed forms and compare them against elimination;
seeded random integer points extend coverage to dimensions where expansion
is impractical (a dimension-84 matrix is checked in about a second).  Every
check lands in a report cell; the JSON serialization is byte-stable for
fixed arguments, so reports can be diffed across machines.
"""

import json

from compdet import grid_symbolic, identity_suite, random_point_check
from compdet.verify import VerifyReport

rep = grid_symbolic(3, 3)
print("symbolic grid n<=3, p<=3:", rep.summary())

points = random_point_check(6, 4, 3, seed=42)
print("dimension-84 matrix at 3 seeded points:", points.summary())

suite = identity_suite(("ci", "xy", "rec"))
print("identity suites (summations, closed form, recurrence):", suite.summary())

merged = VerifyReport.merged([rep, points, suite])
blob = merged.to_json_text()
data = json.loads(blob)
print(f"\nmerged report: {data['pass']} pass / {data['fail']} fail, "
      f"{len(blob)} bytes of JSON")
print("first cell:", json.dumps(data["cells"][0]))

again = VerifyReport.merged(
    [grid_symbolic(3, 3), random_point_check(6, 4, 3, seed=42),
     identity_suite(("ci", "xy", "rec"))]
).to_json_text()
print("re-run is byte-identical:", again == blob)

"""Run the check battery on one instance, then on a small inline catalog."""
import json

from nashjet.verify import SingularityInstance, parse_catalog, run_catalog, verify_instance

inst = SingularityInstance.from_text("E6", "x^3 + y^4", (4, 3), (2,))
rep = verify_instance(inst)
for v in rep.verdicts:
    print(v.check, v.n, v.status.value, v.reason.value if v.reason else "")

text = json.dumps([
    {"name": "A2", "poly": "x^2 + y^3", "weights": [3, 2], "n_range": [2, 3]},
    {"name": "D4", "poly": "x^3 + y^3", "weights": [1, 1], "n_range": [2]},
])
report = run_catalog(instances=parse_catalog(text))
print(report.table())
print("exit code", report.exit_code)

# the bundled catalog takes about a minute:  nashjet catalog run --format table

# Run the whole battery of checks and look at the report.
import json

from ncps import verify_paper

report = verify_paper(seed=42, degree_cap=4, cases=50, with_oracle=True)
print(report.to_text())

d = json.loads(report.to_json())
print("\nchecks:", [c["id"] for c in d["checks"]])
print("worst numeric deviation:", max(c["oracle"]["max_deviation"] for c in d["checks"]))

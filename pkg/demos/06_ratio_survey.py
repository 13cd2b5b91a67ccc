# A small seeded survey through the experiment driver, as the CLI would run it.
import tempfile
from pathlib import Path

from bamboo_pinwheel.experiment import ExperimentSpec, run_experiment

out = Path(tempfile.mkdtemp())
spec = ExperimentSpec.from_dict({
    "generator": "random",
    "params": {"profile": "boundary", "n": [2, 30]},
    "count": 60,
    "seed": 5,
    "algorithms": ["pw", "pw2", "reducemax", "oracle"],
    "output_csv": "survey.csv",
    "output_json": "survey.json",
}, out)
res = run_experiment(spec)
for k, v in res.summary.items():
    print(f"{k:28s} {v}")
print((out / "survey.csv").read_text().splitlines()[1])
print("passed:", res.passed)

"""Validates CLI JSON output against the schemas in schemas/."""

import json
import subprocess
import sys
import tempfile
from pathlib import Path

import jsonschema


def main() -> int:
    binary, schema_dir = sys.argv[1], Path(sys.argv[2])
    schemas = {p.stem.removesuffix(".schema"): json.loads(p.read_text()) for p in schema_dir.glob("*.schema.json")}

    specs = {
        "radial": {"n": 1, "a": [[1, 0, 1.0]], "b": [[0, 1, 1.0]]},
        "family": {"n": 3, "a": [[3, 0, 1], [1, 2, 1], [1, 0, -0.5]], "b": [[2, 1, 1], [0, 3, 1], [0, 1, -0.5]]},
        "empty": {"n": 2, "a": [], "b": []},
    }
    runs = []
    with tempfile.TemporaryDirectory() as tmp:
        for name, spec in specs.items():
            jsonschema.validate(spec, schemas["spec"])
            path = Path(tmp) / f"{name}.json"
            path.write_text(json.dumps(spec))
            runs.append(("eval", [binary, "eval", "--spec", str(path), "--method", "both", "--format", "json"]))
            runs.append(("zero_report", [binary, "zeros", "--spec", str(path)]))
        runs.append(("cycle_report", [binary, "cycles", "--spec", str(Path(tmp) / "family.json"), "--eps", "1e-3",
                                      "--points", "19"]))
        for schema, cmd in runs:
            proc = subprocess.run(cmd, capture_output=True, text=True, check=False)
            if proc.returncode != 0:
                print(f"FAIL {' '.join(cmd[1:3])}: exit {proc.returncode}\n{proc.stderr}")
                return 1
            jsonschema.validate(json.loads(proc.stdout), schemas[schema])
            print(f"ok   {schema:<13} {cmd[1]} {Path(cmd[3]).stem}")
    return 0


if __name__ == "__main__":
    sys.exit(main())

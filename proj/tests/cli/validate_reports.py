"""Run the CLI on a few inputs and validate every JSON report against the schema."""
import json
import subprocess
import sys

try:
    import jsonschema
except ImportError:
    sys.exit(77)

tool, schema_path = sys.argv[1], sys.argv[2]
with open(schema_path) as f:
    schema = json.load(f)

runs = [
    ["order", "--group", "S1"],
    ["stabilizer", "--group", "Q", "--vector", "(1,0,0,0,0,0)"],
    ["verify", "--group", "S1"],
    ["verify", "--group", "S3", "--mode", "table"],
    ["imprimitive", "--k-kind", "quaternion", "--h-selector", "center", "--n", "2", "--trials", "5"],
]
for args in runs:
    proc = subprocess.run([tool, *args], capture_output=True, text=True)
    if proc.returncode != 0:
        print("exit", proc.returncode, "for", args, proc.stderr)
        sys.exit(1)
    jsonschema.validate(json.loads(proc.stdout), schema)
    print("valid:", " ".join(args))

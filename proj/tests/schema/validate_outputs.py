"""Run each pipegate command with --format json and validate against the shipped schema."""

import json
import subprocess
import sys

import jsonschema

COMMANDS = [
    ["invert"],
    ["invert", "--model", "LineVul", "--pi", "0.2"],
    ["bounds", "--model", "VulDeePecker", "--pi", "0.38", "--tau-m", "156", "--tau-v", "600"],
    ["limits"],
    ["simulate", "--model", "VulDeePecker", "--tau-v", "600", "--delta-ratio", "0.06", "--n", "5000", "--trials", "5"],
    ["reproduce", "--no-simulation"],
]


def main() -> int:
    binary, schema_path = sys.argv[1], sys.argv[2]
    with open(schema_path, encoding="utf-8") as f:
        schema = json.load(f)
    jsonschema.Draft202012Validator.check_schema(schema)
    validator = jsonschema.Draft202012Validator(schema)
    failures = 0
    for args in COMMANDS:
        proc = subprocess.run([binary, "--format", "json", *args], capture_output=True, text=True, check=False)
        if proc.returncode not in (0, 1):
            print(f"FAIL {' '.join(args)}: exit {proc.returncode}: {proc.stderr.strip()}")
            failures += 1
            continue
        document = json.loads(proc.stdout)
        errors = sorted(validator.iter_errors(document), key=lambda e: list(e.path))
        if errors:
            failures += 1
            for e in errors:
                print(f"FAIL {' '.join(args)}: {list(e.path)}: {e.message}")
        else:
            print(f"ok   {' '.join(args)}")
    return 1 if failures else 0


if __name__ == "__main__":
    sys.exit(main())

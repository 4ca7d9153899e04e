# Copyright 2026 The cvrpcut Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""Runs the cvrpcut binary and validates every JSON output against docs/schemas."""

import argparse
import json
import os
import pathlib
import shutil
import subprocess
import sys

import jsonschema


def load_schemas(directory):
    schemas = {}
    for path in sorted(pathlib.Path(directory).glob("*.schema.json")):
        schema = json.loads(path.read_text())
        jsonschema.Draft202012Validator.check_schema(schema)
        schemas[path.name.split(".")[0]] = jsonschema.Draft202012Validator(schema)
    return schemas


class Checker:
    def __init__(self, cli, schemas, workdir):
        self.cli = cli
        self.schemas = schemas
        self.workdir = workdir
        self.failures = 0
        self.checked = {name: 0 for name in schemas}

    def run(self, *args):
        env = dict(os.environ, CVRPCUT_QUIET="1")
        proc = subprocess.run([self.cli, *map(str, args)], capture_output=True,
                              text=True, env=env, check=False)
        if proc.returncode != 0:
            raise RuntimeError(f"{args[0]} exited {proc.returncode}: {proc.stderr}")
        return proc.stdout

    def validate(self, name, doc, where):
        errors = sorted(self.schemas[name].iter_errors(doc), key=str)
        for e in errors:
            print(f"FAIL {name} ({where}): {e.message} at {list(e.absolute_path)}")
        self.failures += len(errors)
        self.checked[name] += 1

    def validate_lines(self, name, text, where):
        for k, line in enumerate(text.splitlines()):
            if line.strip():
                self.validate(name, json.loads(line), f"{where}:{k + 1}")


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--cli", required=True)
    ap.add_argument("--schemas", required=True)
    ap.add_argument("--workdir", required=True)
    args = ap.parse_args()

    work = pathlib.Path(args.workdir)
    shutil.rmtree(work, ignore_errors=True)
    work.mkdir(parents=True)
    c = Checker(args.cli, load_schemas(args.schemas), work)
    for name, validator in c.schemas.items():
        if validator.is_valid({}):
            print(f"FAIL {name}: schema accepts an empty object")
            c.failures += 1

    files = c.run("gen", "--count", "2", "--size", "30", "--seed", "5",
                  "--output-dir", work).split()
    for vrp in files:
        stem = pathlib.Path(vrp).stem
        res, log, sol = work / f"{stem}.json", work / f"{stem}.jsonl", work / f"{stem}.sol.json"
        c.run("root-solve", vrp, "--fci", "--fci-gate", "100", "--max-iter", "10",
              "--result", res, "--cut-log", log, "--solution", sol)
        c.validate("result", json.loads(res.read_text()), res.name)
        c.validate_lines("cut_log", log.read_text(), log.name)
        c.validate("solution", json.loads(sol.read_text()), sol.name)

        plain = work / f"{stem}.lp.json"
        c.run("root-solve", vrp, "--max-iter", "0", "--strategy", "exact",
              "--solution", plain, "--result", work / f"{stem}.lp.result.json")
        c.validate_lines("cut_log", c.run("separate", vrp, plain), f"separate {stem}")
        c.validate_lines("cut_log", c.run("separate", vrp, plain, "--strategy", "exact"),
                         f"separate exact {stem}")

    fci_lines = sum('"FCI"' in (work / f"{pathlib.Path(v).stem}.jsonl").read_text()
                    for v in files)
    if fci_lines == 0:
        print("note: no FCI cut appeared in the generated logs")

    n = json.loads((work / f"{pathlib.Path(files[0]).stem}.sol.json").read_text())["n"]
    oracle = work / "oracle.jsonl"
    oracle.write_text(json.dumps({"signature": "unmatched", "p": [0.0] + [0.5] * (n - 1)}) + "\n")
    c.validate_lines("oracle", oracle.read_text(), oracle.name)
    res = work / "with_oracle.json"
    c.run("root-solve", files[0], "--oracle", oracle, "--max-iter", "2", "--result", res)
    c.validate("result", json.loads(res.read_text()), res.name)

    for items in ("602:split,662:split", "7", ",".join(["3"] * 30), "5,4,3,3,3,2"):
        c.validate("bpp", json.loads(c.run("bpp", "--cap", "144" if "split" in items else "10",
                                           "--items", items)), f"bpp {items[:20]}")

    c.validate("sensitivity", json.loads(c.run(
        "sensitivity", "--generate", "2", "--size", "15", "--cut-rounds", "1",
        "--report", "-")), "sensitivity")
    c.validate("sensitivity", json.loads(c.run(
        "sensitivity", "--generate", "1", "--size", "12", "--constant", "0.5",
        "--report", "-")), "sensitivity constant")
    c.validate("diversity", json.loads(c.run(
        "diversity", "--generate", "1", "--size", "20", "--policies", "greedy",
        "pi-greedy", "roulette", "softmax", "--runs", "3", "--cut-rounds", "1",
        "--report", "-")), "diversity")

    for name, count in sorted(c.checked.items()):
        print(f"{name}: {count} document(s) checked")
        if count == 0:
            print(f"FAIL {name}: nothing was validated")
            c.failures += 1
    if c.failures:
        print(f"{c.failures} schema violation(s)")
        return 1
    print("all CLI outputs match their schemas")
    return 0


if __name__ == "__main__":
    sys.exit(main())

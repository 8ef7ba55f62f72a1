#!/usr/bin/env python3
# Copyright 2026 The mechcheck Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#      http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.
"""Regenerates scenarios/golden/ from manifest.json with a built binary.

Usage: make_goldens.py BUILD/tools/mechcheck
"""

import json
import pathlib
import subprocess
import sys


def main():
    binary = str(pathlib.Path(sys.argv[1]).resolve())
    root = pathlib.Path(__file__).resolve().parent.parent / "scenarios"
    manifest = json.loads((root / "golden" / "manifest.json").read_text())
    for case in manifest:
        args = [binary] + case["args"] + ["--output", "json"]
        run = subprocess.run(args, cwd=root, capture_output=True, text=True)
        if run.returncode != case["exit"]:
            sys.exit("%s: exit %d, expected %d\n%s" %
                     (case["golden"], run.returncode, case["exit"], run.stderr))
        (root / "golden" / case["golden"]).write_text(run.stdout)
        print("wrote", case["golden"])


if __name__ == "__main__":
    main()

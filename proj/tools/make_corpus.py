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
"""Writes the bundled scenario and grid corpus into scenarios/."""

import json
import pathlib


def single_item(agents, replicas, types, values, prior, algorithm=None):
    """Agent k values outcome tok at values[type] and every other outcome at 0."""
    outcomes = ["to%d" % (k + 1) for k in range(agents)]
    valuation = []
    for k in range(agents):
        table = {}
        for t, v in zip(types, values):
            for i, o in enumerate(outcomes):
                table["%s,%s" % (t, o)] = str(v) if i == k else "0"
        valuation.append(table)
    return {
        "agents": agents,
        "replicas": replicas,
        "types": types,
        "outcomes": outcomes,
        "prior": prior,
        "valuation": valuation,
        "algorithm": algorithm or {"kind": "builtin", "name": "welfare-max"},
    }


def main():
    root = pathlib.Path(__file__).resolve().parent.parent / "scenarios"
    root.mkdir(exist_ok=True)
    half = {"low": "1/2", "high": "1/2"}
    files = {
        "two_type.json": single_item(2, 2, ["low", "high"], [1, 2], half),
        "uniform_three_types.json": single_item(
            2, 3, ["t1", "t2", "t3"], [1, 2, 3],
            {"t1": "1/3", "t2": "1/3", "t3": "1/3"}),
        "skewed_prior.json": single_item(
            3, 2, ["t1", "t2", "t3"], [1, 2, 3], {"t1": "1/3", "t3": "2/3"}),
        "constant.json": single_item(
            2, 2, ["low", "high"], [1, 2], half,
            {"kind": "builtin", "name": "constant",
             "params": {"outcome": "to1"}}),
        "big.json": single_item(
            3, 6, ["t1", "t2", "t3"], [1, 2, 3],
            {"t1": "1/3", "t2": "1/3", "t3": "1/3"}),
        "second_price_grid.json": {
            "payment_rule": "clarke",
            "families": [
                {"kind": "single-item", "bidders": [2, 3],
                 "values": ["0", "1", "2", "3"]},
                {"kind": "matching", "size": [2],
                 "entries": ["0", "1/2", "1", "2"]},
            ],
        },
        "first_price_grid.json": {
            "payment_rule": "first-price",
            "families": [
                {"kind": "single-item", "bidders": 2,
                 "values": ["0", "1", "2", "3"]},
            ],
        },
    }
    for name, doc in files.items():
        (root / name).write_text(json.dumps(doc, indent=2) + "\n")


if __name__ == "__main__":
    main()

#!/usr/bin/env python3
#
# This file is part of concurrence_tools
#
# MIT License
#
# concurrence_tools, Copyright (c) 2026 The concurrence-tools authors
#
# See the LICENSE file for the full license text.

import os
import sys

sys.path.insert(0, os.path.abspath(os.path.join(os.path.dirname(__file__), "..")))


def pytest_generate_tests(metafunc):
    """
    Populate test methods from the `SCENARIOS` table of their class. The table maps a
    test function name to a list of (scenario id, kwargs) tuples, e.g.

        SCENARIOS = {
            "test_canonical_value": [
                ("w3", {"label": StateLabel.w(3), "expected": 1.0}),
            ],
        }
    """
    if metafunc.cls is None:
        return
    scenarios = getattr(metafunc.cls, "SCENARIOS", {}).get(metafunc.function.__name__)
    if not scenarios:
        return

    scenario_ids = []
    argnames = []
    argvalues = []
    for scenario_id, scenario_params in scenarios:
        scenario_ids.append(scenario_id)
        argnames = list(scenario_params.keys())
        argvalues.append([scenario_params[name] for name in argnames])

    metafunc.parametrize(argnames, argvalues, ids=scenario_ids, scope="class")

# Copyright 2026 The dcbb Authors
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

"""Exact verification of black-box transformations for monotone allocation rules."""

from fractions import Fraction

from ._core import (
    BudgetExceeded,
    DimensionError,
    Environment,
    Error,
    InfeasibleOutput,
    Instance,
    ParameterError,
    ParseError,
    RestrictionViolation,
    generate,
    load_instance,
    run,
)

__all__ = [
    "BudgetExceeded",
    "DimensionError",
    "Environment",
    "Error",
    "InfeasibleOutput",
    "Instance",
    "ParameterError",
    "ParseError",
    "RestrictionViolation",
    "as_fraction",
    "generate",
    "load_instance",
    "opt_welfare",
    "run",
    "welfare_report",
]


def as_fraction(text):
    """Parses a "p" or "p/q" string into a Fraction."""
    return Fraction(text)


def opt_welfare(env, valuation):
    """Returns (welfare as Fraction, argmax allocation string or None)."""
    welfare, argmax = env.opt_welfare(valuation)
    return as_fraction(welfare), argmax


_RATIONAL_KEYS = (
    "pointwise_min_fraction",
    "sum_welfare_rule",
    "sum_welfare_original",
    "approx_ratio_rule",
    "approx_ratio_original",
)


def welfare_report(instance, transformation=None, **options):
    """Welfare report with rational fields converted to Fraction."""
    report = instance.welfare_report(transformation, **options)
    for key in _RATIONAL_KEYS:
        report[key] = as_fraction(report[key])
    return report

# SPDX-FileCopyrightText: 2026 EcoIndex contributors
# SPDX-License-Identifier: MIT

from .acceleration import ComputeAcceleration
from .distribution import ComputeDistribution
from .nth_year import ComputeNthYear
from .speed import ComputeSpeed
from .task import ComputeIndicator

__all__ = [
    "ComputeAcceleration",
    "ComputeDistribution",
    "ComputeIndicator",
    "ComputeNthYear",
    "ComputeSpeed",
]

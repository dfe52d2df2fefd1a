# SPDX-FileCopyrightText: 2026 EcoIndex contributors
# SPDX-License-Identifier: MIT

"""Entrepreneurial-ecosystem indicators computed from startup funding rounds."""

__version__ = "1.0.0"

"""Mittag-Leffler oscillatory integrals and van der Corput-type decay checks."""

from __future__ import annotations

__version__ = "0.1.0"

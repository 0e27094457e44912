from __future__ import annotations

import pytest

from parcalc.laurent import FieldRing, LaurentPoly, LaurentRing
from parcalc.scalars import make_field


@pytest.fixture(params=[2, 3, 4])
def ctx(request):
    return make_field(request.param)


@pytest.fixture
def ctx3():
    return make_field(3)


def poly(ctx, *pairs):
    """poly(ctx, (exp, coeff), ...)"""
    return LaurentPoly(ctx, dict(pairs))


def lin(ctx, root):
    """T - root."""
    return LaurentPoly(ctx, {1: 1, 0: -root})


__all__ = ["FieldRing", "LaurentRing", "lin", "poly"]

from hypothesis import settings  # noqa: E402

settings.register_profile("parcalc", max_examples=60, deadline=None)
settings.load_profile("parcalc")

from __future__ import annotations

from hypothesis import HealthCheck, settings

from caplab.group_core import PGroupType, abelian_types

settings.register_profile(
    "default", max_examples=60, deadline=None, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("default")

SMALL_TYPES = [A for p in (2, 3, 5) for A in abelian_types(p, 81)]


def T(spec: str) -> PGroupType:
    return PGroupType.parse(spec)

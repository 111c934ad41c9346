import os

from hypothesis import HealthCheck, settings

settings.register_profile(
    "default",
    max_examples=60,
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.register_profile("ci", max_examples=200, deadline=None)
settings.register_profile("quick", max_examples=15, deadline=None)

settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))

from hypothesis import HealthCheck, settings

# derandomized so repeated runs examine the same examples
settings.register_profile(
    "repo", derandomize=True, deadline=None, max_examples=60,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("repo")

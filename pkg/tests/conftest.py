from hypothesis import HealthCheck, settings

# numba JIT compilation makes first calls slow; statistical helpers are not
# cheap either.  Derandomize so CI never flakes on a fresh adversarial draw.
settings.register_profile(
    "semnorm",
    deadline=None,
    derandomize=True,
    max_examples=50,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("semnorm")

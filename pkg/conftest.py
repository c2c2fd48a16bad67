"""
Shared pytest configuration: hypothesis profiles and common graphs.
"""

import os

import pytest
from hypothesis import HealthCheck, settings

settings.register_profile('dev', max_examples=30, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.register_profile('ci', max_examples=200, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile(os.getenv('HYPOTHESIS_PROFILE', 'dev'))


@pytest.fixture
def petersen_graph():
    from src.families import petersen
    return petersen().graph

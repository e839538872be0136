from __future__ import annotations

import pytest
from hypothesis import HealthCheck, settings

from stsq.data import sample_dataset_path
from stsq.ingest import import_csv

settings.register_profile(
    "default", deadline=None, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("default")


@pytest.fixture(scope="session")
def sample_dataset():
    dataset, report = import_csv(sample_dataset_path().read_text(encoding="utf-8"))
    assert report.ok
    return dataset

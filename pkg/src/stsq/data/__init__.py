"""Bundled sample dataset and task corpus."""

from importlib import resources
from pathlib import Path


def _path(name: str) -> Path:
    with resources.as_file(resources.files(__package__).joinpath(name)) as p:
        return Path(p)


def sample_dataset_path() -> Path:
    """CSV of the six-transmitter sample dataset."""
    return _path("transmitters_sample.csv")


def task_corpus_path() -> Path:
    """JSON task corpus with oracle-generated expectations."""
    return _path("task_corpus.json")

#!/usr/bin/env python3
"""Regenerate the shipped task corpus and its golden SQL snapshots.

Expected name sets are computed with the brute-force oracle from the test
suite (per-minute / per-hertz enumeration), never typed by hand.  Run from
the repository root after changing the sample dataset or the task list::

    python3 scripts/generate_corpus.py
"""

from __future__ import annotations

import json
import sys
from pathlib import Path

REPO_ROOT = Path(__file__).resolve().parent.parent
sys.path.insert(0, str(REPO_ROOT))

from stsq.data import sample_dataset_path, task_corpus_path  # noqa: E402
from stsq.dsl import parse  # noqa: E402
from stsq.ingest import import_csv  # noqa: E402
from stsq.sqlgen import emit  # noqa: E402
from tests.oracles import evaluate_brute  # noqa: E402

# Sites of the sample transmitters, decimal degrees (six decimals is plenty
# at kilometre radii).
MOBILE = "(38.669961, -90.119369)"
RAILWAY = "(38.629311, -90.235192)"
STADIUM = "(38.633028, 90.189544)"
SATCOM = "(38.6223, 90.232711)"

# The location placeholders in the underlying task list are instantiated
# with sample sites; "in the city of X" is read as a 10 km radius around X,
# and "at noon" as the one-minute window starting 12:00.  Two tasks ask an
# analytics-flavoured question (available frequencies, transmission times);
# the corpus encodes their selection complement (silent rows, in-radius
# rows) while the analytics themselves are exercised via `stsq gaps` and
# `stsq times`.
TASKS: list[tuple[str, str, str]] = [
    (
        "tolerance-90mhz",
        "freq 90MHz +/- 1MHz",
        "anything transmitting at 90 MHz give or take 1 MHz",
    ),
    (
        "active-1-to-4",
        "active 01:00..04:00",
        "frequencies active between 1:00 and 4:00",
    ),
    (
        "silent-3-to-8",
        "not active 03:00..08:00",
        "availability question, selection form: rows silent through 3:00-8:00"
        " (free sub-bands come from `stsq gaps --window ... --hours 03:00..08:00`)",
    ),
    (
        "near-mobile-1km",
        f"within 1 km of {MOBILE}",
        "anything transmitting within 1 km of the mobile tower site",
    ),
    (
        "near-mobile-20km",
        f"within 20 km of {MOBILE}",
        "transmission-times question, selection form: rows within 20 km of the"
        " mobile tower site (their joint schedule comes from `stsq times`)",
    ),
    (
        "outside-90-100mhz",
        "not freq 90MHz..100MHz",
        "anything that does not transmit within 90-100 MHz",
    ),
    (
        "band-78-85-near-stadium",
        f"freq 78MHz..85MHz and within 1 km of {STADIUM}",
        "78-85 MHz within 1 km of the stadium site",
    ),
    (
        "either-radius",
        f"within 1 km of {MOBILE} or within 10 km of {STADIUM}",
        "within 1 km of the mobile tower or within 10 km of the stadium",
    ),
    (
        "exact-25mhz-city-noon",
        f"freq 25MHz..25MHz and within 10 km of {RAILWAY} and active 12:00..12:01",
        "exactly 25 MHz, in the city around the railway site (10 km), at noon",
    ),
    (
        "evening-90-100-or-56mhz",
        "active 19:00..23:00 and freq 90MHz..100MHz or freq 56000kHz +/- 8000kHz",
        "19:00-23:00 in 90-100 MHz, or at 56000 kHz give or take 8000 kHz",
    ),
    (
        "band-55-60-near-railway-morning",
        f"freq 55MHz..60MHz and within 1 km of {RAILWAY} and active 05:00..09:00",
        "55-60 MHz within 1 km of the railway site between 5:00 and 9:00",
    ),
    (
        "night-10km-67500khz",
        f"active 01:00..03:00 and within 10 km of {SATCOM} and freq 67500kHz..67500kHz",
        "1:00-3:00, within 10 km of the satcom site, at 67500 kHz",
    ),
]


def main() -> None:
    dataset, report = import_csv(sample_dataset_path().read_text(encoding="utf-8"))
    assert report.ok, report.errors

    tasks = []
    golden_dir = REPO_ROOT / "tests" / "golden_sql"
    golden_dir.mkdir(exist_ok=True)
    for task_id, dsl_text, notes in TASKS:
        query = parse(dsl_text)
        expected = sorted(evaluate_brute(query, dataset))
        tasks.append(
            {
                "id": task_id,
                "dsl": dsl_text,
                "expected_names": expected,
                "notes": notes,
            }
        )
        (golden_dir / f"task_{task_id}.sql").write_text(
            emit(query).text + "\n", encoding="utf-8"
        )
        print(f"{task_id}: {len(expected)} match(es)")

    corpus = {"tasks": tasks}
    out_path = task_corpus_path()
    out_path.write_text(json.dumps(corpus, indent=2, ensure_ascii=False) + "\n", encoding="utf-8")
    print(f"wrote {out_path} and {len(TASKS)} golden SQL files")


if __name__ == "__main__":
    main()

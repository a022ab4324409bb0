import io
import math
from fractions import Fraction

import pytest

from services.error_handler import OutOfRange, TheoremViolation
from services.sweep import (
    CSV_COLUMNS,
    SweepRow,
    check_rows,
    rows_to_frame,
    run_sweep,
    sweep_fractions,
    write_csv,
)
from services.task_queue import TaskQueue, TaskStatus


def test_sweep_fractions_order_and_filters():
    assert sweep_fractions(4) == [Fraction(1, 2), Fraction(1, 3), Fraction(2, 3),
                                  Fraction(1, 4), Fraction(3, 4)]
    assert all(r.denominator % 2 for r in sweep_fractions(9, knots_only=True))
    assert len(sweep_fractions(7, knots_only=True, canonical_classes=True)) == 9
    with pytest.raises(OutOfRange):
        sweep_fractions(1)


def test_small_knot_sweep_passes():
    rows, summary = run_sweep(7, knots_only=True)
    assert [r.q for r in rows] == [3] * 2 + [5] * 4 + [7] * 6
    assert all(r.theorem1 == "pass" and r.diameter == 2 * r.crossing for r in rows)
    assert summary.failed == 0 and summary.passed == 12 and summary.knots == 12
    check_rows(rows)


def test_single_link_sweep():
    rows, summary = run_sweep(2)
    assert len(rows) == 1
    assert (rows[0].p, rows[0].q, rows[0].theorem1, rows[0].is_knot) == (1, 2, "n/a", False)
    assert summary.line() == "rows=1 knots=0 pass=0 fail=0 n/a=1 max_slopes=2"


def test_parallel_sweep_matches_serial():
    serial, _ = run_sweep(11, jobs=1)
    parallel, _ = run_sweep(11, jobs=3)
    assert parallel == serial


def test_check_rows_dumps_failures():
    bad = SweepRow(p=2, q=7, n=1, crossing=5, diameter=8, num_slopes=3, fib_bound=3,
                   theorem1="fail", engines_agree=True, is_knot=True)
    with pytest.raises(TheoremViolation) as exc:
        check_rows([bad])
    failure = exc.value.details["failures"][0]
    assert failure["row"]["diameter"] == 8
    assert failure["report"]["diameter"] == 10


def test_write_csv():
    rows, _ = run_sweep(3)
    buffer = io.StringIO()
    write_csv(rows, buffer)
    lines = buffer.getvalue().splitlines()
    assert lines[0] == ",".join(CSV_COLUMNS)
    assert lines[1] == "1,2,0,2,4,2,2,n/a,true,false"
    assert lines[2] == "1,3,0,3,6,2,2,pass,true,true"
    assert len(lines) == 4


def test_rows_to_frame_columns():
    rows, _ = run_sweep(5, knots_only=True)
    frame = rows_to_frame(rows)
    assert list(frame.columns) == CSV_COLUMNS
    assert set(frame["is_knot"]) == {"true"}


def test_task_queue_inline():
    queue = TaskQueue()
    task_id = queue.add_task(math.factorial, 5)
    failing = queue.add_task(math.sqrt, -1)
    tasks = queue.run()
    assert tasks[task_id].result == 120
    assert tasks[failing].status is TaskStatus.FAILED
    assert queue.get_task_status(failing)["status"] == "failed"
    assert queue.get_task_status(99) == {"error": "Task not found"}


def test_task_queue_pool_keeps_order():
    assert TaskQueue(max_workers=2).run_all(math.factorial, range(8)) == [math.factorial(i) for i in range(8)]


def test_task_queue_reraises_first_failure():
    with pytest.raises(ValueError):
        TaskQueue(max_workers=2).run_all(math.sqrt, [4, -1, 9])

import threading
import time

from ptrbf.services.worker_pool import WorkerPool, get_pool


def test_results_keep_submission_order():
    pool = WorkerPool(max_workers=4)

    def slow_square(n):
        time.sleep(0.001 * (10 - n))
        return n * n

    assert pool.map(slow_square, range(10)) == [n * n for n in range(10)]


def test_concurrency_is_bounded():
    pool = WorkerPool(max_workers=2)
    lock = threading.Lock()
    active = [0]
    peak = [0]

    def job(_):
        with lock:
            active[0] += 1
            peak[0] = max(peak[0], active[0])
        time.sleep(0.01)
        with lock:
            active[0] -= 1

    pool.map(job, range(8))
    assert peak[0] <= 2


def test_single_worker_runs_inline():
    seen = []
    get_pool(1).map(lambda _: seen.append(threading.get_ident()), range(3))
    assert set(seen) == {threading.get_ident()}


def test_worker_count_is_at_least_one():
    assert WorkerPool(max_workers=0).max_workers == 1

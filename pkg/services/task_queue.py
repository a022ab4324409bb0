from concurrent.futures import ProcessPoolExecutor, as_completed
from dataclasses import dataclass
from datetime import datetime
from enum import Enum
from typing import Any, Callable, Dict, Iterable, List, Optional

import structlog

from services.error_handler import configure_logging

logger = structlog.get_logger(__name__)


class TaskStatus(Enum):
    PENDING = "pending"
    RUNNING = "running"
    COMPLETED = "completed"
    FAILED = "failed"


@dataclass
class Task:
    task_id: int
    func: Callable
    args: tuple
    status: TaskStatus
    created_at: datetime
    started_at: Optional[datetime] = None
    completed_at: Optional[datetime] = None
    result: Any = None
    error: Optional[BaseException] = None


class TaskQueue:
    """Work pool over independent CPU-bound tasks.

    With one worker tasks run in-process; otherwise they go to a process pool,
    so task functions and arguments must be picklable. Results always come
    back in submission order.
    """

    def __init__(self, max_workers: int = 1):
        self.max_workers = max(1, int(max_workers))
        self.tasks: Dict[int, Task] = {}
        self._next_id = 0

    def add_task(self, func: Callable, *args) -> int:
        """Add a task to the queue"""
        task_id = self._next_id
        self._next_id += 1
        self.tasks[task_id] = Task(
            task_id=task_id,
            func=func,
            args=args,
            status=TaskStatus.PENDING,
            created_at=datetime.now()
        )
        return task_id

    def get_task_status(self, task_id: int) -> Dict[str, Any]:
        task = self.tasks.get(task_id)
        if not task:
            return {"error": "Task not found"}

        return {
            "task_id": task.task_id,
            "status": task.status.value,
            "created_at": task.created_at.isoformat(),
            "started_at": task.started_at.isoformat() if task.started_at else None,
            "completed_at": task.completed_at.isoformat() if task.completed_at else None,
            "error": str(task.error) if task.error else None
        }

    def run(self) -> List[Task]:
        """Execute every pending task and return all tasks by id"""
        pending = [t for t in self.tasks.values() if t.status is TaskStatus.PENDING]
        if self.max_workers == 1 or len(pending) <= 1:
            for task in pending:
                self._run_inline(task)
        else:
            self._run_pooled(pending)
        return [self.tasks[i] for i in sorted(self.tasks)]

    def _run_inline(self, task: Task):
        task.status = TaskStatus.RUNNING
        task.started_at = datetime.now()
        try:
            task.result = task.func(*task.args)
            task.status = TaskStatus.COMPLETED
        except Exception as e:
            task.error = e
            task.status = TaskStatus.FAILED
            logger.error("task_failed", task_id=task.task_id, error=str(e))
        task.completed_at = datetime.now()

    def _run_pooled(self, pending: List[Task]):
        with ProcessPoolExecutor(max_workers=self.max_workers, initializer=configure_logging) as pool:
            futures = {}
            for task in pending:
                task.status = TaskStatus.RUNNING
                task.started_at = datetime.now()
                futures[pool.submit(task.func, *task.args)] = task

            for future in as_completed(futures):
                task = futures[future]
                try:
                    task.result = future.result()
                    task.status = TaskStatus.COMPLETED
                except Exception as e:
                    task.error = e
                    task.status = TaskStatus.FAILED
                    logger.error("task_failed", task_id=task.task_id, error=str(e))
                task.completed_at = datetime.now()

    def run_all(self, func: Callable, items: Iterable[Any]) -> List[Any]:
        """func(item) for every item, in order; re-raises the first failure"""
        ids = [self.add_task(func, item) for item in items]
        self.run()
        for task_id in ids:
            task = self.tasks[task_id]
            if task.status is TaskStatus.FAILED:
                raise task.error
        return [self.tasks[task_id].result for task_id in ids]

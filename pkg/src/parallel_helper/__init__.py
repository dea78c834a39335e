from .job_pool import Progress, get_default_jobs, ordered_map

__all__ = [
    "Progress",
    "get_default_jobs",
    "ordered_map",
]

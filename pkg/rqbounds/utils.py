import inspect
import logging
import time
from string import Template
from functools import wraps
from typing import Any, Callable


log = logging.getLogger(__name__)


# region docstring
DOCSTRING_TEMPLATE = Template(
"""$docstring

Additional notes
----------------
$appendices"""
)


def add_to_docstring(*appendices: str) -> Callable:
    """
    A decorator that appends additional information to the docstring of a function.

    Parameters:
    - appendices (str|list[str]): Text or list of texts to append.

    Returns:
    - callable: Decorated function.
    """
    def decorator(func):
        func.__doc__ = DOCSTRING_TEMPLATE.substitute(
            docstring = func.__doc__,
            appendices = '\n'.join(appendices)
        )
        @wraps(func)
        def wrapper(*args, **kwargs):
            return func(*args, **kwargs)
        return wrapper
    return decorator


# region keywords
def add_keyword_defaults(keywords: dict[str, Any]) -> Callable:
    """
    A decorator that adds default keyword arguments to the wrapped function.

    Parameters:
    - keywords (dict[str, Any]): A dictionary containing default keyword arguments.

    Returns:
    - callable: Decorated function.

    The returned decorator, when applied to a function, merges the provided
    default keyword arguments with any arguments passed to the decorated
    function. Explicit keyword arguments win; positional arguments are never
    overridden, so defaults are only injected for parameters not already
    bound positionally.

    Example:
    ```python
    @add_keyword_defaults(CONFIG['defaults']['davis_kahan'])
    def davis_kahan(n, eps, shifted):
        ...

    davis_kahan()            # n=64, eps=0.5, shifted=False from config
    davis_kahan(n=8)         # eps and shifted still from config
    ```
    """
    def decorator(func):
        names = list(inspect.signature(func).parameters)

        @wraps(func)
        def wrapper(*args, **kwargs):
            bound_positionally = set(names[:len(args)])
            defaults = {
                k: v for k, v in keywords.items()
                if k not in bound_positionally
            }
            kwargs = defaults | kwargs
            return func(*args, **kwargs)
        return wrapper
    return decorator


# region timing
class Stopwatch:
    """
    Measure elapsed wall-clock time and report it through the logger.

    Example:
    >>> stopwatch = Stopwatch()
    >>> ...
    >>> stopwatch.split('eigendecompose')
    >>> stopwatch.total()
    """
    def __init__(self, name: str = 'run'):
        self.name = name
        self.start = time.perf_counter()
        self.last = self.start

    def split(self, label: str) -> float:
        now = time.perf_counter()
        elapsed = now - self.last
        self.last = now
        log.info("%s | %s: %.3fs", self.name, label, elapsed)
        return elapsed

    def total(self) -> float:
        elapsed = time.perf_counter() - self.start
        log.info("%s | total: %.3fs", self.name, elapsed)
        return elapsed

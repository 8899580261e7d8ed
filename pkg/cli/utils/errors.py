import functools

import typer

from src.exceptions import ParameterError, PointingModelError
from src.utils import logger

USAGE_EXIT_CODE = 2
FAILURE_EXIT_CODE = 1


def fail(error: Exception, code: int = FAILURE_EXIT_CODE):
    """单行错误信息写到 stderr 后退出"""
    message = " ".join(str(error).split())
    typer.echo(f"error: {type(error).__name__}: {message}", err=True)
    raise typer.Exit(code=code)


def handle_errors(func):
    """命令入口的统一错误处理"""

    @functools.wraps(func)
    def wrapper(*args, **kwargs):
        try:
            return func(*args, **kwargs)
        except (typer.Exit, typer.Abort, typer.BadParameter):
            raise
        except ParameterError as e:
            logger.debug("Usage error in {}: {}", func.__name__, e)
            fail(e, USAGE_EXIT_CODE)
        except (PointingModelError, ValueError, OSError) as e:
            logger.debug("Command {} failed: {}", func.__name__, e)
            fail(e, FAILURE_EXIT_CODE)
        except Exception as e:
            logger.exception("Command {} crashed", func.__name__)
            fail(e, FAILURE_EXIT_CODE)

    return wrapper

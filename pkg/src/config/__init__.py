from .app import Config, config

__all__ = ["Config", "config"]

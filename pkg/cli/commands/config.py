"""全局配置的查看与修改，修改写回 <save_dir>/config/base.toml"""

import typer
from pydantic import ValidationError
from rich.table import Table

from src.config import Config, config
from src.exceptions import ParameterError
from src.utils import logger

from cli.commands.common import console
from cli.utils import handle_errors
from cli.utils.options import normalize_key

config_app = typer.Typer(no_args_is_help=True, help="查看与修改全局配置")


def _field(key: str) -> str:
    name = normalize_key(key)
    if name not in Config.model_fields:
        raise ParameterError(f"unknown config key: {key}")
    if name == "save_dir":
        raise ParameterError("save_dir is set through the SAVE_DIR environment variable")
    return name


@config_app.command("show")
@handle_errors
def show():
    """列出所有配置项、当前值与默认值"""
    dumped = config.dump_config()
    table = Table(title=f"config ({config.config_file})")
    table.add_column("key", no_wrap=True)
    table.add_column("value", justify="right")
    table.add_column("default", justify="right")
    table.add_column("description")
    for name, item in dumped["_config_items"].items():
        value = dumped[name]
        style = "bold" if value != item["default"] else None
        table.add_row(name, str(value), str(item["default"]), item["des"] or "", style=style)
    console.print(table)


@config_app.command("set")
@handle_errors
def set_value(
    key: str = typer.Argument(..., help="配置项名（下划线或连字符均可）"),
    value: str = typer.Argument(..., help="新值"),
):
    """修改一项配置并保存"""
    name = _field(key)
    try:
        setattr(config, name, value)
    except ValidationError as e:
        raise ParameterError(f"invalid value for {name}: {e.errors()[0]['msg']}") from None
    config.save()
    logger.info("Config {} set to {!r}", name, getattr(config, name))
    console.print(f"{name} = {getattr(config, name)}")


@config_app.command("reset")
@handle_errors
def reset(key: str = typer.Argument(..., help="配置项名")):
    """恢复一项配置的默认值并保存"""
    name = _field(key)
    setattr(config, name, Config.model_fields[name].default)
    config.save()
    console.print(f"{name} = {getattr(config, name)}")

"""pointing-ofc 命令行入口"""

import typer

from src.utils import setup_logger

from cli.commands.compare import compare
from cli.commands.config import config_app
from cli.commands.fit import fit_command
from cli.commands.simulate import simulate
from cli.commands.sweep import sweep

app = typer.Typer(no_args_is_help=True, help="鼠标指向运动的最优反馈控制模型：模拟、拟合、比较与参数扫描")


@app.callback()
def main(
    log_level: str = typer.Option("WARNING", "--log-level", help="日志级别（DEBUG / INFO / WARNING / ERROR）"),
):
    setup_logger("Pointing", level=log_level.upper())


app.command("simulate")(simulate)
app.command("fit")(fit_command)
app.command("compare")(compare)
app.command("sweep")(sweep)
app.add_typer(config_app, name="config")


if __name__ == "__main__":
    app()

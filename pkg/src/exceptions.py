class PointingModelError(Exception):
    """指向模型库异常基类"""

    pass


class ContractViolationError(PointingModelError):
    """维度不匹配、矩阵非有限或值类型不变量被破坏"""

    pass


class ParameterError(PointingModelError):
    """模型参数或任务参数无效"""

    pass


class SolverDivergenceError(PointingModelError):
    """最优控制求解发散（目标函数非有限或 Riccati 分母奇异）"""

    def __init__(self, message: str, iteration: int | None = None):
        super().__init__(message)
        self.message = message
        self.iteration = iteration

    def __str__(self):
        if self.iteration is None:
            return self.message
        return f"{self.message} (iteration {self.iteration})"


class CorpusFormatError(PointingModelError):
    """轨迹语料文件格式错误"""

    def __init__(self, message: str, path: str | None = None, line: int | None = None):
        super().__init__(message)
        self.message = message
        self.path = path
        self.line = line

    def __str__(self):
        location = ""
        if self.path:
            location = f"{self.path}"
        if self.line is not None:
            location = f"{location}:{self.line}" if location else f"line {self.line}"
        return f"{location}: {self.message}" if location else self.message


class InputError(PointingModelError):
    """输入数据为空、过短或长度不一致"""

    pass

"""控制台日志模块

所有人类可读的诊断信息都写到 stderr, stdout 只留给 JSON 报告。
"""
import sys
from typing import Dict, Any

TAG = '【Life】'

RED = '\033[91m'
GREEN = '\033[92m'
YELLOW = '\033[93m'
MAGENTA = '\033[95m'
RESET = '\033[0m'

_quiet = False


def set_quiet(quiet: bool):
    """开启/关闭进度类输出 (错误始终输出)"""
    global _quiet
    _quiet = bool(quiet)


def _emit(message: str, color: str = ''):
    if color:
        print(f'{color}{TAG}{message}{RESET}', file=sys.stderr)
    else:
        print(f'{TAG}{message}', file=sys.stderr)


def format_count(count: float) -> str:
    """将数量格式化为合适的单位（M、K等）"""
    if count >= 1000000:
        return f"{count/1000000:.2f}M"
    elif count >= 1000:
        return f"{count/1000:.2f}K"
    return f"{count:g}"


def log_info(message: str):
    if not _quiet:
        _emit(message)


def log_success(message: str):
    if not _quiet:
        _emit(f'✅ {message}', GREEN)


def log_warning(message: str):
    _emit(f'⚠️ {message}', YELLOW)


def log_error(message: str):
    _emit(f'❌ {message}', RED)


def log_progress(done: int, total: int, label: str):
    """记录批量任务进度"""
    if _quiet:
        return
    pct = 100.0 * done / total if total else 100.0
    _emit(f'⏳ {label}: {format_count(done)}/{format_count(total)} ({pct:.1f}%)')


def log_rle_width_overrun(source: str, declared: int, actual: int):
    """记录 RLE 宽度声明偏小"""
    _emit(f'⚠️ {source} 的 RLE 头部声明 x = {declared}, 实际宽度 {actual}, 以细胞数据为准', YELLOW)


def log_verify_result(name: str, period: Any, observed: Any, passed: bool):
    """记录单个图案的周期校验结果"""
    if passed:
        if not _quiet:
            _emit(f'✅ p{period} {name} 校验通过', GREEN)
    else:
        _emit(f'❌ p{period} {name} 校验失败, 实测: {observed}', RED)


def log_census_summary(soups: int, unresolved: int, top_objects: Dict[str, int]):
    """记录普查汇总"""
    if _quiet:
        return
    top = ", ".join([f"{name}: {format_count(count)}" for name, count in top_objects.items()])
    _emit(f'🧪 汤数: {format_count(soups)}  未收敛: {unresolved}  高频对象: {top}')
    if unresolved:
        _emit(f'⚠️ {unresolved} 个汤在代数上限内未进入循环', YELLOW)


def log_search_progress(task: int, total: int, solutions: int, nodes: int):
    """记录催化剂搜索进度"""
    if _quiet:
        return
    _emit(f'🔍 分支 {task}/{total}  已模拟 {format_count(nodes)} 代  解: {solutions}', MAGENTA)

"""RLE 图案格式读写

语法: 可选 # 注释行; 头部 ``x = <w>, y = <h>[, rule = <r>]``;
主体由 ``<n>b`` (死细胞段), ``<n>o`` (活细胞段), ``<n>$`` (换行) 组成, 以 ``!`` 结束。
"""
import re
from dataclasses import dataclass
from typing import List, Tuple

from .life_engine import Pattern

RULE = 'B3/S23'
LINE_WIDTH = 70

HEADER_RE = re.compile(
    r'^\s*x\s*=\s*(\d+)\s*,\s*y\s*=\s*(\d+)\s*(?:,\s*rule\s*=\s*(\S+?))?\s*$',
    re.IGNORECASE,
)
TOKEN_RE = re.compile(r'(\d*)([bo$!])')


class RleParseError(ValueError):
    """RLE 文本不合法"""


@dataclass(frozen=True)
class RleDocument:
    comments: Tuple[str, ...]
    width: int
    height: int
    rule: str
    pattern: Pattern
    width_overrun: bool = False

    @property
    def name(self) -> str:
        """#N 注释给出的名称"""
        for line in self.comments:
            if line.startswith('#N'):
                return line[2:].strip()
        return ''

    @property
    def actual_width(self) -> int:
        box = self.pattern.bounding_box()
        return 0 if box is None else box[2] + 1


def _decode_body(body: str) -> Tuple[List[Tuple[int, int]], Tuple[int, int]]:
    """解析主体, 返回 (活细胞列表, 结束时游标 (x, y))"""
    cells = []
    x = y = 0
    pos = 0
    compact = re.sub(r'\s+', '', body)
    while pos < len(compact):
        m = TOKEN_RE.match(compact, pos)
        if not m:
            raise RleParseError(f'RLE 主体第 {pos} 个字符非法: {compact[pos]!r}')
        digits, tag = m.groups()
        if digits and int(digits) == 0:
            raise RleParseError(f'RLE 计数不能为 0 (位置 {pos})')
        count = int(digits) if digits else 1
        pos = m.end()
        if tag == '!':
            return cells, (x, y)
        if tag == 'b':
            x += count
        elif tag == 'o':
            cells.extend((x + i, y) for i in range(count))
            x += count
        else:
            y += count
            x = 0
    return cells, (x, y)


def parse_rle_body(body: str) -> Pattern:
    """解析不带头部的 RLE 主体 (内置夹具与配置使用)"""
    end = body.find('!')
    if end < 0:
        raise RleParseError('RLE 主体缺少结束符 "!"')
    cells, _ = _decode_body(body[:end + 1])
    return Pattern(cells)


def parse_rle(text: str) -> RleDocument:
    """解析完整 RLE 文档"""
    lines = text.splitlines()
    comments = []
    index = 0
    while index < len(lines) and (lines[index].startswith('#') or not lines[index].strip()):
        if lines[index].startswith('#'):
            comments.append(lines[index].rstrip())
        index += 1
    if index >= len(lines):
        raise RleParseError('缺少 RLE 头部')
    header = HEADER_RE.match(lines[index])
    if not header:
        raise RleParseError(f'RLE 头部格式错误: {lines[index]!r}')
    width, height = int(header.group(1)), int(header.group(2))
    rule = header.group(3) or RULE
    if rule.upper() != RULE:
        raise RleParseError(f'只支持 {RULE} 规则, 收到 {rule}')

    body = '\n'.join(lines[index + 1:])
    end = body.find('!')
    if end < 0:
        raise RleParseError('RLE 主体缺少结束符 "!"')
    cells, (cx, cy) = _decode_body(body[:end + 1])
    # 允许 '!' 前单个多余的 '$'
    if cy > height or (cy == height and cx > 0):
        raise RleParseError(f'RLE 主体行数超出声明高度 y = {height}')

    overrun = False
    for x, y in cells:
        if y >= height:
            raise RleParseError(f'RLE 主体超出声明高度 y = {height}')
        if x >= width:
            overrun = True
    return RleDocument(tuple(comments), width, height, RULE, Pattern(cells), overrun)


def _row_runs(xs: List[int]) -> List[str]:
    out = []
    prev = -1
    i = 0
    while i < len(xs):
        j = i
        while j + 1 < len(xs) and xs[j + 1] == xs[j] + 1:
            j += 1
        gap = xs[i] - prev - 1
        if gap:
            out.append(f'{gap if gap > 1 else ""}b')
        run = j - i + 1
        out.append(f'{run if run > 1 else ""}o')
        prev = xs[j]
        i = j + 1
    return out


def _body_tokens(pattern: Pattern) -> List[str]:
    normalized = pattern.normalize()
    rows = {}
    for x, y in normalized.cells:
        rows.setdefault(y, []).append(x)
    tokens = []
    last_y = None
    for y in sorted(rows):
        if last_y is not None:
            gap = y - last_y
            tokens.append(f'{gap if gap > 1 else ""}$')
        tokens.extend(_row_runs(sorted(rows[y])))
        last_y = y
    tokens.append('!')
    return tokens


def encode_body(pattern: Pattern) -> str:
    """不折行的规范 RLE 主体 (以 '!' 结尾), 用作形状键"""
    return ''.join(_body_tokens(pattern))


def write_rle(pattern: Pattern) -> str:
    """写出规范 RLE: 平移到原点, 头部为精确包围盒, 主体每行不超过 70 字符"""
    box = pattern.bounding_box()
    if box is None:
        return f'x = 0, y = 0, rule = {RULE}\n!\n'
    width, height = box[2] - box[0] + 1, box[3] - box[1] + 1
    lines = []
    line = ''
    for token in _body_tokens(pattern):
        if len(line) + len(token) > LINE_WIDTH:
            lines.append(line)
            line = ''
        line += token
    lines.append(line)
    return f'x = {width}, y = {height}, rule = {RULE}\n' + '\n'.join(lines) + '\n'


def load_pattern(text: str) -> Pattern:
    """带头部时按完整文档解析, 否则按裸主体解析"""
    stripped = [l for l in text.splitlines() if l.strip() and not l.startswith('#')]
    if stripped and HEADER_RE.match(stripped[0]):
        return parse_rle(text).pattern
    return parse_rle_body(text)

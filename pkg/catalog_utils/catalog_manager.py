#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
振荡器目录管理类 - 内置图案数据集的加载、查询与逐项周期校验

数据文件:
    manifest.json      条目清单 (周期/名称/发现者/年份/文件)
    patterns/*.rle     每个条目一个 RLE 文件
"""

import json
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field, replace
from functools import lru_cache
from pathlib import Path
from typing import Any, Dict, List, Optional

from alert_utils.console_logger import log_error, log_rle_width_overrun, log_verify_result
from life_utils.life_engine import Pattern
from life_utils.rle_codec import RleParseError, parse_rle
from osc_utils.dynamics import DynamicsKind, detect_dynamics


@dataclass(frozen=True)
class CatalogEntry:
    id: str
    period: Optional[int]
    name: str
    discoverer: str
    year: str
    rle: Optional[str]
    expected_kind: str = 'oscillator'
    source: str = 'appendix'
    verifiable: bool = True
    note: str = ''
    period_formula: Optional[str] = None
    file: Optional[str] = None

    def pattern(self) -> Pattern:
        if self.rle is None:
            raise ValueError(f'条目 {self.id} 没有内嵌图案')
        return parse_rle(self.rle).pattern

    def to_dict(self) -> Dict[str, Any]:
        return {
            'id': self.id,
            'period': self.period,
            'period_formula': self.period_formula,
            'name': self.name,
            'discoverer': self.discoverer,
            'year': self.year,
            'source': self.source,
            'verifiable': self.verifiable,
            'note': self.note,
            'file': self.file,
        }


@dataclass(frozen=True)
class EntryResult:
    id: str
    name: str
    period: int
    passed: bool
    observed_kind: Optional[str] = None
    observed_period: Optional[int] = None
    error: str = ''

    def to_dict(self) -> Dict[str, Any]:
        return {
            'id': self.id,
            'name': self.name,
            'period': self.period,
            'passed': self.passed,
            'observed_kind': self.observed_kind,
            'observed_period': self.observed_period,
            'error': self.error,
        }


@dataclass
class CatalogReport:
    results: List[EntryResult] = field(default_factory=list)
    skipped: int = 0

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.results)

    @property
    def failures(self) -> List[EntryResult]:
        return [r for r in self.results if not r.passed]

    def to_dict(self) -> Dict[str, Any]:
        return {
            'status': 'ok' if self.passed else 'fail',
            'checked': len(self.results),
            'failed': len(self.failures),
            'skipped_unverifiable': self.skipped,
            'entries': [r.to_dict() for r in self.results],
        }


def verify_entry(entry: CatalogEntry) -> EntryResult:
    """解析 -> 动力学识别 -> 与目录周期比对"""
    try:
        pattern = entry.pattern()
        report = detect_dynamics(pattern, max_gens=entry.period)
        passed = report.kind == DynamicsKind(entry.expected_kind) and report.period == entry.period
        return EntryResult(entry.id, entry.name, entry.period, passed,
                           report.kind.value, report.period)
    except Exception as e:
        return EntryResult(entry.id, entry.name, entry.period, False, error=str(e))


class CatalogManager:
    """内置目录: 按周期查询与批量校验"""

    DATA_DIR = Path(__file__).parent
    MANIFEST_NAME = 'manifest.json'

    def __init__(self, manifest_path: Optional[Path] = None):
        """
        初始化目录

        Args:
            manifest_path: 清单文件路径, 缺省使用包内数据
        """
        self.manifest_path = Path(manifest_path) if manifest_path else self.DATA_DIR / self.MANIFEST_NAME
        self.entries: List[CatalogEntry] = []
        self.load_manifest()

    def load_manifest(self):
        """加载清单与各条目的 RLE 文件"""
        try:
            with open(self.manifest_path, 'r', encoding='utf-8') as f:
                manifest = json.load(f)
        except Exception as e:
            log_error(f'加载目录清单失败: {e}')
            raise

        base = self.manifest_path.parent
        entries = []
        for raw in manifest['entries']:
            rle = None
            if raw.get('file'):
                rle = (base / raw['file']).read_text(encoding='utf-8')
                # 解析失败只记录, 留给 verify_entry 判为该条目失败
                try:
                    doc = parse_rle(rle)
                    if doc.width_overrun:
                        log_rle_width_overrun(raw['file'], doc.width, doc.actual_width)
                except RleParseError as e:
                    log_error(f'目录条目 {raw["id"]} 图案无法解析: {e}')
            entries.append(CatalogEntry(
                id=raw['id'],
                period=raw.get('period'),
                name=raw['name'],
                discoverer=raw.get('discoverer', ''),
                year=raw.get('year', ''),
                rle=rle,
                expected_kind=raw.get('expected_kind', 'oscillator'),
                source=raw.get('source', 'appendix'),
                verifiable=raw.get('verifiable', rle is not None) and rle is not None,
                note=raw.get('note', ''),
                period_formula=raw.get('period_formula'),
                file=raw.get('file'),
            ))
        self.entries = entries

    def lookup(self, period: int) -> List[CatalogEntry]:
        """返回给定周期的全部条目, 保持清单顺序"""
        return [e for e in self.entries if e.period == period]

    def first_known(self, period: int) -> Optional[CatalogEntry]:
        """目录表中该周期的首个已知振荡器 (必须带图案)"""
        candidates = [e for e in self.lookup(period) if e.verifiable]
        for entry in candidates:
            if entry.source == 'appendix':
                return entry
        return candidates[0] if candidates else None

    def verifiable_entries(self) -> List[CatalogEntry]:
        return [e for e in self.entries if e.verifiable]

    def verify_catalog(self, jobs: int = 1) -> CatalogReport:
        """逐项校验; 结果按 (周期, 名称) 排序, 与并行度无关"""
        entries = self.verifiable_entries()
        if jobs > 1:
            with ProcessPoolExecutor(max_workers=jobs) as pool:
                results = list(pool.map(verify_entry, entries))
        else:
            results = [verify_entry(e) for e in entries]
        results.sort(key=lambda r: (r.period, r.name, r.id))
        for r in results:
            log_verify_result(r.name, r.period, r.error or f'{r.observed_kind} p{r.observed_period}', r.passed)
        return CatalogReport(results, skipped=len(self.entries) - len(entries))

    def with_entry(self, entry_id: str, **changes) -> 'CatalogManager':
        """返回替换了某个条目字段的副本 (用于故障注入)"""
        clone = object.__new__(CatalogManager)
        clone.manifest_path = self.manifest_path
        clone.entries = [replace(e, **changes) if e.id == entry_id else e for e in self.entries]
        return clone


@lru_cache(maxsize=1)
def default_catalog() -> CatalogManager:
    return CatalogManager()


def catalog_lookup(period: int) -> List[CatalogEntry]:
    return default_catalog().lookup(period)


def verify_catalog(jobs: int = 1) -> CatalogReport:
    return default_catalog().verify_catalog(jobs)

#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
生命游戏全周期工具 - 命令行入口

stdout 只输出一个 JSON 报告, 诊断信息写到 stderr。
退出码: 0 成功, 1 校验/搜索失败或未决, 2 输入错误。
"""

import sys
from pathlib import Path
sys.path.append(str(Path(__file__).parent.parent))

import argparse
import copy
import json
from fractions import Fraction
from typing import Any, Dict, Optional, Tuple

import yaml

from alert_utils.console_logger import log_error, log_info, log_rle_width_overrun, log_success, set_quiet
from alert_utils.sc_alert import send_serverchan_alert
from cat_utils.catalyst_search import SearchConfigError, load_search_config, search_catalysts, write_solutions
from catalog_utils.catalog_manager import default_catalog
from life_utils.life_engine import Pattern, Torus
from life_utils.rle_codec import RleParseError, parse_rle, write_rle
from osc_utils.dynamics import DynamicsKind, detect_dynamics
from osc_utils.volatility import volatility_stats
from soup_utils.soup_census import SoupConfig, run_census
from synth_utils.lcm_composer import CompositionError, compose_lcm
from synth_utils.period_resolver import resolve_period
from synth_utils.snark_loop import LoopVerificationError, build_snark_loop, plan_snark_loop, verify_snark_loop

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_BAD_INPUT = 2

Outcome = Tuple[str, Dict[str, Any]]


class BadInputError(Exception):
    """命令行输入无法使用 (文件缺失、解析失败、参数越界)"""


def _size(text: str) -> Tuple[int, int]:
    try:
        w, h = text.lower().split('x')
        return int(w), int(h)
    except ValueError:
        raise argparse.ArgumentTypeError(f'尺寸须写成 WxH, 收到 {text!r}')


def _positive(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f'须为正整数, 收到 {text!r}')
    if value <= 0:
        raise argparse.ArgumentTypeError(f'须为正整数, 收到 {text!r}')
    return value


class OmniCli:
    """子命令分发与报告输出"""

    CONFIG_PATH = Path(__file__).parent / 'config.yaml'
    DEFAULT_CONFIG = {
        'analysis': {'max_gens': 4096},
        'census': {'density': 0.375, 'max_gens': 2048},
        'catsearch': {'recovery_deadline': 64, 'node_budget': None},
        'jobs': 1,
        'quiet': False,
        'serverchan': {'enabled': False, 'sckey': '', 'title': '【Life】任务完成'},
    }

    def __init__(self, config_path: Optional[Path] = None):
        self.load_config(config_path or self.CONFIG_PATH)

    def load_config(self, path):
        """加载配置文件; 文件不存在时使用内置默认值"""
        self.config = copy.deepcopy(self.DEFAULT_CONFIG)
        path = Path(path)
        if not path.exists():
            return
        try:
            with open(path, 'r', encoding='utf-8') as f:
                loaded = yaml.safe_load(f) or {}
            for key, value in loaded.items():
                if isinstance(value, dict) and isinstance(self.config.get(key), dict):
                    self.config[key].update(value)
                else:
                    self.config[key] = value
        except Exception as e:
            log_error(f'加载配置文件错误: {e}')
            raise

    def build_parser(self) -> argparse.ArgumentParser:
        jobs = self.config['jobs']
        parser = argparse.ArgumentParser(prog='omni_cli', description='生命游戏振荡器全周期工具')
        parser.add_argument('--quiet', action='store_true', help='不输出进度信息')
        sub = parser.add_subparsers(dest='command', required=True)

        p = sub.add_parser('analyze', help='识别图案的动力学类型与周期')
        p.add_argument('file')
        p.add_argument('--max-gens', type=_positive, default=self.config['analysis']['max_gens'])

        for name, text in (('synth', '合成 p >= 43 的 Snark 回路'), ('resolve', '给出任意周期的振荡器')):
            p = sub.add_parser(name, help=text)
            p.add_argument('--period', type=int, required=True)
            p.add_argument('-o', '--output')

        p = sub.add_parser('compose', help='拼接两个振荡器得到 LCM 周期')
        p.add_argument('a')
        p.add_argument('b')
        p.add_argument('--gap', type=int, default=3)
        p.add_argument('--max-gens', type=_positive, default=self.config['analysis']['max_gens'])
        p.add_argument('-o', '--output')

        p = sub.add_parser('verify-catalog', help='逐项校验内置目录')
        p.add_argument('--jobs', type=_positive, default=jobs)

        p = sub.add_parser('census', help='环面随机汤普查')
        p.add_argument('--soups', type=int, required=True)
        p.add_argument('--seed', type=int, required=True)
        p.add_argument('--soup-size', type=_size, required=True)
        p.add_argument('--torus', type=_size, required=True)
        p.add_argument('--density', type=str, default=str(self.config['census']['density']))
        p.add_argument('--max-gens', type=_positive, default=self.config['census']['max_gens'])
        p.add_argument('--jobs', type=_positive, default=jobs)

        p = sub.add_parser('catsearch', help='催化剂放置搜索')
        p.add_argument('--config', required=True)
        p.add_argument('--jobs', type=_positive, default=jobs)
        p.add_argument('--out-dir')
        p.add_argument('--exhaustive', action='store_true', help='不剪枝的组合穷举')
        return parser

    # ---------- 子命令 ----------

    def _read_rle(self, path: str) -> Pattern:
        try:
            text = Path(path).read_text(encoding='utf-8')
        except OSError as e:
            raise BadInputError(f'无法读取 {path}: {e}')
        doc = parse_rle(text)
        if doc.width_overrun:
            log_rle_width_overrun(path, doc.width, doc.actual_width)
        return doc.pattern

    def _write_output(self, pattern: Pattern, output: Optional[str], payload: Dict[str, Any]):
        rle = write_rle(pattern)
        if output:
            Path(output).write_text(rle, encoding='utf-8')
            payload['output'] = output
            log_success(f'图案已写入 {output}')
        else:
            payload['rle'] = rle

    def cmd_analyze(self, args) -> Outcome:
        pattern = self._read_rle(args.file)
        report = detect_dynamics(pattern, max_gens=args.max_gens)
        payload = {'file': args.file, 'population': pattern.population, **report.to_dict()}
        if report.kind == DynamicsKind.UNRESOLVED:
            return 'unresolved', payload
        if report.kind == DynamicsKind.OSCILLATOR:
            payload['volatility'] = volatility_stats(pattern, report.period).to_dict()
        return 'ok', payload

    def cmd_synth(self, args) -> Outcome:
        spec = plan_snark_loop(args.period)
        pattern = build_snark_loop(spec)
        payload = {'period': args.period, 'population': pattern.population, 'spec': spec.to_dict()}
        try:
            verify_snark_loop(spec, pattern)
        except LoopVerificationError as e:
            log_error(f'回路校验失败: {e}')
            payload['error'] = str(e)
            return 'fail', payload
        self._write_output(pattern, args.output, payload)
        return 'ok', payload

    def cmd_resolve(self, args) -> Outcome:
        resolved = resolve_period(args.period, default_catalog())
        payload = resolved.to_dict()
        payload.pop('rle')
        self._write_output(resolved.pattern, args.output, payload)
        return 'ok', payload

    def _periodic(self, path: str, max_gens: int) -> Tuple[Pattern, int]:
        pattern = self._read_rle(path)
        report = detect_dynamics(pattern, max_gens=max_gens)
        if report.kind != DynamicsKind.OSCILLATOR:
            raise BadInputError(f'{path} 不是振荡器 ({report.kind.value})')
        return pattern, report.period

    def cmd_compose(self, args) -> Outcome:
        a, pa = self._periodic(args.a, args.max_gens)
        b, pb = self._periodic(args.b, args.max_gens)
        try:
            composite = compose_lcm(a, pa, b, pb, gap=args.gap)
        except CompositionError as e:
            log_error(f'拼接失败: {e}')
            return 'fail', {'periods': [pa, pb], 'error': str(e)}
        payload = composite.to_dict()
        payload.pop('rle')
        payload['periods'] = [pa, pb]
        self._write_output(composite.pattern, args.output, payload)
        return 'ok', payload

    def cmd_verify_catalog(self, args) -> Outcome:
        report = default_catalog().verify_catalog(jobs=args.jobs)
        payload = report.to_dict()
        failures = report.failures
        self.notify(f'目录校验完成: {len(report.results)} 项, 失败 {len(failures)} 项')
        return ('ok' if report.passed else 'fail'), payload

    def cmd_census(self, args) -> Outcome:
        try:
            density = Fraction(args.density)
        except (ValueError, ZeroDivisionError):
            raise BadInputError(f'密度无法解析: {args.density!r}')
        try:
            cfg = SoupConfig(
                seed=args.seed,
                soup_width=args.soup_size[0],
                soup_height=args.soup_size[1],
                torus=Torus(*args.torus),
                density=density,
                max_gens=args.max_gens,
                soup_count=args.soups,
            )
        except ValueError as e:
            raise BadInputError(str(e))
        tally = run_census(cfg, jobs=args.jobs)
        top = ', '.join(f'{k}: {v}' for k, v in tally.ranked(tally.named())[:5])
        self.notify(f'普查完成: {tally.soups} 个汤, 未收敛 {tally.unresolved}\n\n{top}')
        return 'ok', tally.to_dict()

    def cmd_catsearch(self, args) -> Outcome:
        if not Path(args.config).exists():
            raise BadInputError(f'搜索配置不存在: {args.config}')
        settings = self.config['catsearch']
        cfg = load_search_config(args.config, default_deadline=settings['recovery_deadline'],
                                 node_budget=settings.get('node_budget'))
        result = search_catalysts(cfg, jobs=args.jobs, exhaustive=args.exhaustive)
        payload = {'config': cfg.to_dict(), **result.to_dict()}
        if args.out_dir:
            payload['index'] = str(write_solutions(result, args.out_dir))
        self.notify(f'催化剂搜索完成: {len(result.solutions)} 个解, 不完整: {result.incomplete}')
        return ('ok' if result.solutions else 'fail'), payload

    # ---------- 分发 ----------

    def notify(self, message: str):
        if send_serverchan_alert(message, self.config):
            log_info('已推送 Server酱 通知')

    def emit(self, command: str, status: str, payload: Dict[str, Any]):
        report = {'command': command, 'status': status, **payload}
        print(json.dumps(report, ensure_ascii=False, indent=2))

    def run(self, argv=None) -> int:
        parser = self.build_parser()
        try:
            args = parser.parse_args(argv)
        except SystemExit as e:
            return EXIT_OK if e.code in (0, None) else EXIT_BAD_INPUT
        set_quiet(args.quiet or self.config.get('quiet', False))

        handler = getattr(self, 'cmd_' + args.command.replace('-', '_'))
        try:
            status, payload = handler(args)
        except (BadInputError, RleParseError, SearchConfigError, ValueError, OSError) as e:
            log_error(f'{args.command} 输入错误: {e}')
            self.emit(args.command, 'fail', {'error': str(e)})
            return EXIT_BAD_INPUT
        except Exception as e:
            log_error(f'{args.command} 执行失败: {e}')
            self.emit(args.command, 'fail', {'error': str(e)})
            return EXIT_FAIL

        self.emit(args.command, status, payload)
        return EXIT_OK if status == 'ok' else EXIT_FAIL


def run_cli(argv=None, config_path: Optional[Path] = None) -> int:
    return OmniCli(config_path).run(argv)


if __name__ == "__main__":
    sys.exit(run_cli())

#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
求解器基准测试命令行工具
多种子批量运行、按节点访问数评估可利用度、同步阶段统计与 CSV 输出

子命令:
  solve        单次求解
  bench        按配置文件批量运行并汇总 90% 置信区间
  phase-stats  统计 sync PCFR 的同步阶段长度
  compare      比较两种算法达到目标可利用度所需的节点访问数
  matrix       在矩阵博弈上运行 FP / sync FP / RM
  dump-tree    输出博弈树结构
"""

from __future__ import annotations

import argparse
import configparser
import logging
import math
import os
import sys
from concurrent.futures import ProcessPoolExecutor, as_completed
from dataclasses import dataclass, field
from pathlib import Path
from typing import Callable, Dict, List, Optional, Sequence, Tuple, Union

import numpy as np
import pandas as pd

from game_core import GAMES, ConfigurationError, dump_tree, load_game
from metrics import game_value, touch_summary
from normal_form import load_matrix_game, run_fp, run_rm, run_sync_fp
from solvers import SOLVERS, Budget, IterationRecord, create_solver, dump_state

logging.basicConfig(level=logging.INFO, format='%(asctime)s - %(levelname)s - %(message)s')
logger = logging.getLogger(__name__)

ROOT = Path(__file__).resolve().parent
RESULTS_DIR = ROOT / "results"

RUN_COLUMNS = ["meta_iteration", "effective_iteration", "w_pst", "nodes_touched",
               "exploitability", "wall_time_ms"]
AGGREGATE_COLUMNS = ["nodes_touched_checkpoint", "algorithm", "mean_exploitability",
                     "ci_low", "ci_high", "n_seeds"]
MATRIX_COLUMNS = ["t", "br_p1", "br_p2", "phase_length", "exploitability"]
CONFIG_KEYS = {"game", "algorithms", "seeds", "budget", "eval_every", "output", "workers", "wall_time"}
MATRIX_ALGORITHMS = {"fp": run_fp, "sync-fp": run_sync_fp, "rm": run_rm}

WORKERS_ENV = "PCFR_BENCH_WORKERS"
CI_Z = 1.645
FLOAT_FORMAT = "%.12g"


class UsageError(ValueError):
    """命令行参数或配置文件错误"""


@dataclass(frozen=True)
class EvaluationSchedule:
    """
    可利用度评估节奏

    log:<k>    每十倍节点访问数取 k 个对数等距检查点
    <n>nodes   每 n 个节点一个检查点
    <n>iters   每 n 次元迭代评估一次（汇总时仍用对数检查点）
    """

    kind: str = "log"
    amount: int = 10

    @classmethod
    def parse(cls, text: str) -> "EvaluationSchedule":
        text = text.strip()
        try:
            if text.startswith("log:"):
                schedule = cls("log", int(text[len("log:"):]))
            elif text.endswith("nodes"):
                schedule = cls("nodes", int(float(text[: -len("nodes")])))
            elif text.endswith("iters"):
                schedule = cls("iters", int(float(text[: -len("iters")])))
            else:
                raise ValueError(text)
        except ValueError:
            raise UsageError(f"评估节奏格式错误: {text!r}，应为 log:<k>、<n>nodes 或 <n>iters") from None
        if schedule.amount < 1:
            raise UsageError(f"评估节奏必须为正: {text!r}")
        return schedule

    def checkpoints(self, max_nodes: int) -> List[int]:
        """不超过 max_nodes 的节点检查点"""
        if self.kind == "nodes":
            return list(range(self.amount, max_nodes + 1, self.amount))
        per_decade = self.amount if self.kind == "log" else 10
        points = []
        j = 0
        while True:
            point = math.ceil(10 ** (j / per_decade) - 1e-9)
            if point > max_nodes:
                return points
            if not points or point > points[-1]:
                points.append(point)
            j += 1

    def tracker(self) -> Callable[[int, int, bool], bool]:
        """返回给求解器使用的判定函数：累计节点数首次越过检查点时评估"""
        if self.kind == "iters":
            return lambda meta, nodes, final: final or meta % self.amount == 0

        state = {"next": 1 if self.kind == "log" else self.amount, "j": 0}

        def advance() -> None:
            if self.kind == "nodes":
                state["next"] += self.amount
                return
            while True:
                state["j"] += 1
                point = math.ceil(10 ** (state["j"] / self.amount) - 1e-9)
                if point > state["next"]:
                    state["next"] = point
                    return

        def due(meta: int, nodes: int, final: bool) -> bool:
            crossed = False
            while nodes >= state["next"]:
                crossed = True
                advance()
            return crossed or final

        return due

    def __str__(self) -> str:
        return f"log:{self.amount}" if self.kind == "log" else f"{self.amount}{self.kind}"


@dataclass(frozen=True)
class BenchmarkConfig:
    game: str
    algorithms: Tuple[str, ...]
    seeds: Tuple[int, ...]
    budget: Budget
    eval_every: EvaluationSchedule = field(default_factory=EvaluationSchedule)
    output: Path = RESULTS_DIR
    workers: Optional[int] = None
    wall_time: bool = True

    def __post_init__(self):
        if self.game not in GAMES:
            raise UsageError(f"未知博弈: {self.game}，可选: {', '.join(GAMES)}")
        unknown = [algo for algo in self.algorithms if algo not in SOLVERS]
        if unknown or not self.algorithms:
            raise UsageError(f"未知算法: {', '.join(unknown) or '(空)'}，可选: {', '.join(SOLVERS)}")
        if not self.seeds:
            raise UsageError("至少需要一个种子")
        if self.workers is not None and self.workers < 1:
            raise UsageError(f"workers 必须为正: {self.workers}")

    @classmethod
    def from_file(cls, path: Union[str, Path]) -> "BenchmarkConfig":
        """
        读取 key = value 格式的配置文件

        Args:
            path: 配置文件路径

        Returns:
            BenchmarkConfig
        """
        path = Path(path)
        try:
            text = path.read_text(encoding="utf-8")
        except OSError as e:
            raise UsageError(f"无法读取配置文件 {path}: {e}") from None

        parser = configparser.ConfigParser(inline_comment_prefixes=("#",), interpolation=None)
        try:
            parser.read_string("[bench]\n" + text, source=str(path))
        except configparser.Error as e:
            raise UsageError(f"配置文件格式错误 {path}: {e}") from None
        values = dict(parser["bench"])

        unknown = set(values) - CONFIG_KEYS
        if unknown:
            raise UsageError(f"配置文件包含未知键: {', '.join(sorted(unknown))}")
        missing = {"game", "algorithms", "budget"} - set(values)
        if missing:
            raise UsageError(f"配置文件缺少: {', '.join(sorted(missing))}")

        try:
            workers = int(values["workers"]) if "workers" in values else None
            wall_time = parser["bench"].getboolean("wall_time", fallback=True)
        except ValueError as e:
            raise UsageError(f"配置值无效: {e}") from None

        output = Path(values.get("output", str(RESULTS_DIR)))
        if not output.is_absolute():
            output = path.resolve().parent / output
        return cls(
            game=values["game"],
            algorithms=tuple(algo.strip() for algo in values["algorithms"].split(",") if algo.strip()),
            seeds=parse_seeds(values.get("seeds", "1")),
            budget=Budget.parse(values["budget"]),
            eval_every=EvaluationSchedule.parse(values.get("eval_every", "log:10")),
            output=output,
            workers=workers,
            wall_time=wall_time,
        )


def parse_seeds(text: str) -> Tuple[int, ...]:
    """seeds 为 "30" 时表示种子 0..29，"1,5,9" 为显式列表"""
    try:
        if "," in text:
            return tuple(int(seed) for seed in text.split(",") if seed.strip())
        count = int(text)
    except ValueError:
        raise UsageError(f"seeds 格式错误: {text!r}") from None
    if count < 1:
        raise UsageError(f"至少需要一个种子: {text!r}")
    return tuple(range(count))


def resolve_workers(config: BenchmarkConfig) -> int:
    override = os.environ.get(WORKERS_ENV)
    if override:
        try:
            workers = int(override)
        except ValueError:
            raise UsageError(f"{WORKERS_ENV} 必须是整数: {override!r}") from None
        if workers < 1:
            raise UsageError(f"{WORKERS_ENV} 必须为正: {override!r}")
        return workers
    return config.workers or os.cpu_count() or 1


def records_to_frame(records: Sequence[IterationRecord]) -> pd.DataFrame:
    frame = pd.DataFrame([vars(record) for record in records], columns=RUN_COLUMNS)
    frame["exploitability"] = frame["exploitability"].astype(float)
    return frame


def run_file_name(game: str, algorithm: str, seed: int) -> str:
    return f"{game}_{algorithm}_seed{seed}.csv"


def run_single(game: str, algorithm: str, seed: int, budget: Budget, schedule: EvaluationSchedule,
               output: Path, wall_time: bool = True) -> Dict:
    """
    执行一次求解并写出该次运行的 CSV

    Returns:
        结果字典（路径、最终可利用度、累计节点访问数）
    """
    tree = load_game(game)
    solver = create_solver(algorithm, tree, seed)
    records = solver.run(budget, schedule.tracker(), wall_time)
    summary = touch_summary(tree, solver.touches)

    output.mkdir(parents=True, exist_ok=True)
    path = output / run_file_name(game, algorithm, seed)
    records_to_frame(records).to_csv(path, index=False, float_format=FLOAT_FORMAT)
    return {
        "algorithm": algorithm,
        "seed": seed,
        "path": path,
        "final_exploitability": records[-1].exploitability,
        "nodes_touched": records[-1].nodes_touched,
        "median_touched": summary["median"],
        "solver": solver,
    }


def _run_task(task: Tuple) -> Dict:
    result = run_single(*task)
    # 求解器对象不跨进程返回
    result.pop("solver")
    return result


def aggregate_runs(runs: Sequence[Tuple[str, pd.DataFrame]], schedule: EvaluationSchedule) -> pd.DataFrame:
    """
    把多个种子的运行记录汇总到节点检查点上

    每个检查点 c 取各运行中第一个 nodes_touched ≥ c 且已评估的记录；
    置信区间为 mean ± 1.645 · sd / √n，只有一个种子时区间退化为均值

    Args:
        runs: (算法编号, 运行记录表) 列表
        schedule: 评估节奏，决定检查点

    Returns:
        按 AGGREGATE_COLUMNS 排列的汇总表
    """
    if not runs:
        return pd.DataFrame(columns=AGGREGATE_COLUMNS)
    max_nodes = max(int(frame["nodes_touched"].max()) for _, frame in runs)
    checkpoints = schedule.checkpoints(max_nodes)

    evaluated: Dict[str, List[pd.DataFrame]] = {}
    for algorithm, frame in runs:
        scored = frame.dropna(subset=["exploitability"]).sort_values("nodes_touched")
        evaluated.setdefault(algorithm, []).append(scored)

    rows = []
    for algorithm, frames in evaluated.items():
        nodes = [frame["nodes_touched"].to_numpy() for frame in frames]
        values = [frame["exploitability"].to_numpy() for frame in frames]
        for checkpoint in checkpoints:
            samples = []
            for run_nodes, run_values in zip(nodes, values):
                position = np.searchsorted(run_nodes, checkpoint, side="left")
                if position < len(run_nodes):
                    samples.append(float(run_values[position]))
            if not samples:
                continue
            mean = float(np.mean(samples))
            if len(samples) > 1:
                half = CI_Z * float(np.std(samples, ddof=1)) / math.sqrt(len(samples))
            else:
                half = 0.0
            rows.append([checkpoint, algorithm, mean, mean - half, mean + half, len(samples)])
    return pd.DataFrame(rows, columns=AGGREGATE_COLUMNS)


def run_benchmark(config: BenchmarkConfig) -> Dict[str, Union[Path, List[Path]]]:
    """
    按配置运行全部 (算法, 种子) 组合，写出每次运行的 CSV 与 aggregate.csv

    Args:
        config: 基准配置

    Returns:
        {"runs": 运行 CSV 路径列表, "aggregate": 汇总 CSV 路径}
    """
    config.output.mkdir(parents=True, exist_ok=True)
    tasks = [
        (config.game, algorithm, seed, config.budget, config.eval_every, config.output, config.wall_time)
        for algorithm in config.algorithms
        for seed in config.seeds
    ]
    workers = min(resolve_workers(config), len(tasks))

    print("=" * 80, flush=True)
    print(f"基准测试: {config.game}, 算法 {', '.join(config.algorithms)}, "
          f"{len(config.seeds)} 个种子, 预算 {config.budget}, 并行 {workers}", flush=True)
    print("=" * 80, flush=True)

    results: Dict[Tuple[str, int], Dict] = {}
    errors = 0

    def report(index: int, task: Tuple, result: Optional[Dict], error: Optional[Exception]) -> None:
        nonlocal errors
        label = f"{task[1]} seed={task[2]}"
        if error is not None:
            errors += 1
            print(f"[{index:3d}/{len(tasks)}] {label} ✗ (错误: {error})", flush=True)
            return
        results[(task[1], task[2])] = result
        print(f"[{index:3d}/{len(tasks)}] {label} ✓ (可利用度: {result['final_exploitability']:.3e}, "
              f"节点: {result['nodes_touched']})", flush=True)

    if workers == 1:
        for index, task in enumerate(tasks, 1):
            try:
                report(index, task, _run_task(task), None)
            except Exception as e:
                logger.exception(f"运行失败: {task[1]} seed={task[2]}")
                report(index, task, None, e)
    else:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            futures = {pool.submit(_run_task, task): task for task in tasks}
            for index, future in enumerate(as_completed(futures), 1):
                task = futures[future]
                try:
                    report(index, task, future.result(), None)
                except Exception as e:
                    logger.error(f"运行失败: {task[1]} seed={task[2]}: {e}")
                    report(index, task, None, e)

    if not results:
        raise RuntimeError("所有运行都失败了")

    # 按配置顺序汇总，与完成顺序无关
    ordered = [results[task[1:3]] for task in tasks if task[1:3] in results]
    runs = [(result["algorithm"], pd.read_csv(result["path"])) for result in ordered]
    aggregate = aggregate_runs(runs, config.eval_every)
    aggregate_path = config.output / "aggregate.csv"
    aggregate.to_csv(aggregate_path, index=False, float_format=FLOAT_FORMAT)

    print(f"\n结果已保存到: {config.output}", flush=True)
    print(f"统计: 成功 {len(results)}, 错误 {errors}", flush=True)
    return {"runs": [result["path"] for result in ordered], "aggregate": aggregate_path}


@dataclass
class PhaseStats:
    mapping: pd.DataFrame
    histogram: pd.DataFrame
    max_w: int
    lognormal_mu: float
    lognormal_sigma: float
    loglog_slope: float
    final_decile_slope: float
    superlinear: bool


def _loglog_slope(meta: np.ndarray, effective: np.ndarray) -> float:
    if len(meta) < 2 or np.ptp(np.log(meta)) == 0:
        return float("nan")
    return float(np.polyfit(np.log(meta), np.log(effective), 1)[0])


def sync_phase_stats(records: Union[pd.DataFrame, Sequence[IterationRecord]]) -> PhaseStats:
    """
    统计同步阶段长度

    Args:
        records: 一次运行的记录（DataFrame 或 IterationRecord 列表）

    Returns:
        PhaseStats：元迭代到有效迭代的映射表、按 2 的幂分箱的 w_pst 直方图、
        ln w_pst 的均值与标准差、双对数斜率以及最后十分之一的超线性判定
    """
    frame = records if isinstance(records, pd.DataFrame) else records_to_frame(records)
    if frame.empty:
        raise UsageError("没有可统计的运行记录")

    meta = frame["meta_iteration"].to_numpy(dtype=float)
    effective = frame["effective_iteration"].to_numpy(dtype=float)
    w = frame["w_pst"].to_numpy(dtype=int)
    if np.any(w < 1):
        raise UsageError("w_pst 必须不小于 1")

    mapping = pd.DataFrame({"meta_iteration": meta.astype(int), "effective_iteration": effective.astype(int)})

    exponents = np.floor(np.log2(w)).astype(int)
    counts = np.bincount(exponents)
    histogram = pd.DataFrame({
        "bin_low": [2 ** k for k in range(len(counts))],
        "bin_high": [2 ** (k + 1) - 1 for k in range(len(counts))],
        "count": counts,
    })

    logs = np.log(w)
    tail = max(2, math.ceil(len(frame) / 10))
    final_slope = _loglog_slope(meta[-tail:], effective[-tail:])
    return PhaseStats(
        mapping=mapping,
        histogram=histogram,
        max_w=int(w.max()),
        lognormal_mu=float(logs.mean()),
        lognormal_sigma=float(logs.std()),
        loglog_slope=_loglog_slope(meta, effective),
        final_decile_slope=final_slope,
        superlinear=bool(final_slope > 1.0),
    )


@dataclass(frozen=True)
class Comparison:
    algorithm_a: str
    algorithm_b: str
    target: float
    nodes_a: Optional[int]
    nodes_b: Optional[int]

    @property
    def crossed(self) -> bool:
        return self.nodes_a is not None and self.nodes_b is not None

    @property
    def ratio(self) -> Optional[float]:
        return self.nodes_a / self.nodes_b if self.crossed else None


def compare_to_target(aggregate: Union[pd.DataFrame, str, Path], algorithm_a: str, algorithm_b: str,
                      target: float) -> Comparison:
    """
    两种算法首次达到 mean_exploitability ≤ target 时的节点访问数之比

    Args:
        aggregate: aggregate.csv 或对应的 DataFrame
        algorithm_a: 分子算法
        algorithm_b: 分母算法
        target: 目标可利用度

    Returns:
        Comparison；未达到目标时对应节点数为 None
    """
    frame = aggregate if isinstance(aggregate, pd.DataFrame) else pd.read_csv(aggregate)
    available = set(frame["algorithm"])
    for algorithm in (algorithm_a, algorithm_b):
        if algorithm not in available:
            raise UsageError(f"汇总表中没有算法 {algorithm}，可选: {', '.join(sorted(available))}")

    def first_crossing(algorithm: str) -> Optional[int]:
        rows = frame[frame["algorithm"] == algorithm].sort_values("nodes_touched_checkpoint")
        crossed = rows[rows["mean_exploitability"] <= target]
        return None if crossed.empty else int(crossed.iloc[0]["nodes_touched_checkpoint"])

    return Comparison(algorithm_a, algorithm_b, target, first_crossing(algorithm_a), first_crossing(algorithm_b))


def cmd_solve(args: argparse.Namespace) -> int:
    tree = load_game(args.game)
    schedule = EvaluationSchedule.parse(args.eval_every)
    result = run_single(args.game, args.algo, args.seed, Budget.parse(args.budget), schedule,
                        Path(args.out), wall_time=not args.no_wall_time)
    solver = result["solver"]
    value = game_value(tree, solver.average_profile())
    print(f"✓ {args.algo} @ {args.game}: 可利用度 {result['final_exploitability']:.6e}, "
          f"博弈值 {value:+.6f}, 节点访问 {result['nodes_touched']}", flush=True)
    print(f"结果已保存到: {result['path']}", flush=True)
    if args.dump_state:
        Path(args.dump_state).write_text(dump_state(solver), encoding="utf-8")
        print(f"状态快照已保存到: {args.dump_state}", flush=True)
    return 0


def cmd_bench(args: argparse.Namespace) -> int:
    config = BenchmarkConfig.from_file(args.config)
    run_benchmark(config)
    return 0


def cmd_phase_stats(args: argparse.Namespace) -> int:
    source = Path(args.input)
    stats = sync_phase_stats(pd.read_csv(source))
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    stats.mapping.to_csv(out / f"{source.stem}_mapping.csv", index=False)
    stats.histogram.to_csv(out / f"{source.stem}_histogram.csv", index=False)
    print(f"最大 w_pst: {stats.max_w}", flush=True)
    print(f"ln w_pst: 均值 {stats.lognormal_mu:.4f}, 标准差 {stats.lognormal_sigma:.4f}", flush=True)
    print(f"有效迭代 ~ 元迭代^{stats.loglog_slope:.3f}（最后十分之一: {stats.final_decile_slope:.3f}, "
          f"{'超线性' if stats.superlinear else '非超线性'}）", flush=True)
    print(f"结果已保存到: {out}", flush=True)
    return 0


def cmd_compare(args: argparse.Namespace) -> int:
    comparison = compare_to_target(args.input, args.a, args.b, args.target)
    if not comparison.crossed:
        for algorithm, nodes in ((comparison.algorithm_a, comparison.nodes_a),
                                 (comparison.algorithm_b, comparison.nodes_b)):
            if nodes is None:
                print(f"⚠ {algorithm} 未达到目标 {args.target:g}", flush=True)
        return 0
    print(f"{comparison.algorithm_a}: {comparison.nodes_a} 节点, "
          f"{comparison.algorithm_b}: {comparison.nodes_b} 节点", flush=True)
    print(f"节点访问比 {comparison.algorithm_a}/{comparison.algorithm_b} = {comparison.ratio:.4f}", flush=True)
    return 0


def cmd_matrix(args: argparse.Namespace) -> int:
    game = load_matrix_game(args.game)
    if args.algo == "rm":
        _, records = run_rm(game, args.iters)
    else:
        _, records = MATRIX_ALGORITHMS[args.algo](game, args.iters, args.seed)
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    path = out / f"{game.name}_{args.algo}_seed{args.seed}.csv"
    frame = pd.DataFrame([vars(record) for record in records], columns=MATRIX_COLUMNS)
    frame.to_csv(path, index=False, float_format=FLOAT_FORMAT)
    longest = int(frame["phase_length"].max())
    print(f"✓ {args.algo} @ {game.name}: {len(frame)} 步, 最终可利用度 {frame['exploitability'].iloc[-1]:.6e}, "
          f"最长同步阶段 {longest}", flush=True)
    print(f"结果已保存到: {path}", flush=True)
    return 0


def cmd_dump_tree(args: argparse.Namespace) -> int:
    text = dump_tree(load_game(args.game))
    if args.out:
        Path(args.out).write_text(text, encoding="utf-8")
        print(f"结果已保存到: {args.out}", flush=True)
    else:
        sys.stdout.write(text)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(description="两人零和博弈均衡求解基准工具")
    parser.add_argument("-v", "--verbose", action="store_true", help="详细输出")
    commands = parser.add_subparsers(dest="command", required=True)

    solve = commands.add_parser("solve", help="单次求解")
    solve.add_argument("--game", required=True, help=f"博弈编号: {', '.join(GAMES)}")
    solve.add_argument("--algo", required=True, help=f"算法编号: {', '.join(SOLVERS)}")
    solve.add_argument("--budget", required=True, help="<n>[nodes|iters|eff-iters]")
    solve.add_argument("--seed", type=int, default=0, help="随机种子")
    solve.add_argument("--eval-every", default="log:10", help="log:<k>、<n>nodes 或 <n>iters")
    solve.add_argument("--out", default=str(RESULTS_DIR), help="输出目录")
    solve.add_argument("--no-wall-time", action="store_true", help="wall_time_ms 写 0，便于逐字节比较")
    solve.add_argument("--dump-state", help="把最终状态快照写入该文件")
    solve.set_defaults(handler=cmd_solve)

    bench = commands.add_parser("bench", help="按配置文件批量运行")
    bench.add_argument("--config", required=True, help="key = value 配置文件")
    bench.set_defaults(handler=cmd_bench)

    phase = commands.add_parser("phase-stats", help="同步阶段长度统计")
    phase.add_argument("--in", dest="input", required=True, help="运行 CSV")
    phase.add_argument("--out", default=str(RESULTS_DIR), help="输出目录")
    phase.set_defaults(handler=cmd_phase_stats)

    compare = commands.add_parser("compare", help="比较达到目标可利用度的节点访问数")
    compare.add_argument("--in", dest="input", required=True, help="aggregate.csv")
    compare.add_argument("--a", required=True, help="算法 A")
    compare.add_argument("--b", required=True, help="算法 B")
    compare.add_argument("--target", type=float, required=True, help="目标可利用度")
    compare.set_defaults(handler=cmd_compare)

    matrix = commands.add_parser("matrix", help="矩阵博弈上的 FP / sync FP / RM")
    matrix.add_argument("--game", required=True, help="rps、matching-pennies、diag-<k> 或矩阵文件")
    matrix.add_argument("--algo", required=True, choices=sorted(MATRIX_ALGORITHMS))
    matrix.add_argument("--iters", type=int, required=True, help="迭代次数（sync-fp 为有效迭代）")
    matrix.add_argument("--seed", type=int, default=0, help="随机种子")
    matrix.add_argument("--out", default=str(RESULTS_DIR), help="输出目录")
    matrix.set_defaults(handler=cmd_matrix)

    dump = commands.add_parser("dump-tree", help="输出博弈树结构")
    dump.add_argument("--game", required=True, help=f"博弈编号: {', '.join(GAMES)}")
    dump.add_argument("--out", help="输出文件，默认标准输出")
    dump.set_defaults(handler=cmd_dump_tree)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    """命令行接口"""
    args = build_parser().parse_args(argv)
    if args.verbose:
        logging.getLogger().setLevel(logging.DEBUG)
    try:
        return args.handler(args)
    except (UsageError, ConfigurationError) as e:
        print(f"✗ {e}", file=sys.stderr, flush=True)
        return 2
    except Exception as e:
        logger.exception(f"运行过程中发生错误: {e}")
        return 1


if __name__ == "__main__":
    raise SystemExit(main())

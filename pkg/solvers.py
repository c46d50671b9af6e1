#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
扩展式博弈求解器
CFR、CFR+、PCFR 与 sync PCFR，共用一次带朴素剪枝的树遍历

数值约定：反事实值、Q 值与遗憾均以“机会计数”单位保存，
即真实值乘以博弈树的 chance_scale。整数收益的博弈上 PCFR 的全部量都是整数，
sync PCFR 跳过同步阶段后与逐步执行的 PCFR 完全一致
"""

from __future__ import annotations

import logging
import re
import time
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, Dict, List, Optional, Tuple, Type, Union

import numpy as np

from game_core import ConfigurationError, GameTree, NodeKind, Profile, ReachWeights, validate_profile
from metrics import TouchCounter, exploitability
from normal_form import pursue_times, resolve_phase_length

logger = logging.getLogger(__name__)

BUDGET_UNITS = ("nodes", "iters", "eff-iters")
Q_MODES = ("pcfr", "sync")

# (meta_iteration, 累计节点访问数, 是否最后一条) -> 是否评估可利用度
EvaluationCheck = Callable[[int, int, bool], bool]


@dataclass
class SolverState:
    """
    求解器状态

    q_or_regret: PCFR 系列为累计 Q 值，CFR 系列为累计遗憾（机会计数单位）
    avg_numerator: 平均策略分子，真实单位
    """

    q_or_regret: np.ndarray
    avg_numerator: np.ndarray
    current_profile: np.ndarray
    action_mask: np.ndarray
    meta_iteration: int = 0
    effective_iteration: int = 0
    rng_seed: int = 0
    stationary: bool = False

    @classmethod
    def initial(cls, tree: GameTree, seed: int, random_pure: bool) -> "SolverState":
        shape = tree.action_mask.shape
        if random_pure:
            rng = np.random.default_rng(seed)
            actions = [int(rng.integers(info.num_actions)) for info in tree.infosets]
            profile = tree.pure_profile(actions)
        else:
            profile = tree.uniform_profile()
        return cls(
            q_or_regret=np.zeros(shape),
            avg_numerator=np.zeros(shape),
            current_profile=profile,
            action_mask=tree.action_mask,
            rng_seed=seed,
        )


@dataclass(frozen=True)
class ValueTable:
    """
    一次树遍历的结果

    cfv[I, a] 是行动玩家在 I 选 a 的反事实值（机会计数单位），
    opp_reach / own_reach 是信息集级到达概率，reach 是节点级到达概率
    """

    cfv: np.ndarray
    scale: int
    opp_reach: np.ndarray
    own_reach: np.ndarray
    reach: ReachWeights
    nodes_touched: int
    root_value: float

    @property
    def counterfactual_values(self) -> np.ndarray:
        return self.cfv / self.scale

    @property
    def game_value(self) -> float:
        return self.root_value / self.scale


@dataclass(frozen=True)
class PursuitResultEF:
    gap: np.ndarray
    speed: np.ndarray
    pursue_time: np.ndarray
    phase_length: int
    stationary: bool = False


@dataclass
class IterationRecord:
    meta_iteration: int
    effective_iteration: int
    w_pst: int
    nodes_touched: int
    exploitability: Optional[float] = None
    wall_time_ms: float = 0.0


@dataclass(frozen=True)
class Budget:
    """运行预算：节点访问数、元迭代数或有效迭代数"""

    amount: int
    unit: str = "iters"

    def __post_init__(self):
        if self.unit not in BUDGET_UNITS:
            raise ConfigurationError(f"未知预算单位: {self.unit}，可选: {', '.join(BUDGET_UNITS)}")
        if self.amount < 1:
            raise ConfigurationError(f"预算必须为正: {self.amount}")

    @classmethod
    def parse(cls, text: Union[str, int, "Budget"]) -> "Budget":
        """解析 "<n>[nodes|iters|eff-iters]"，允许 1e5 这样的写法，默认单位 iters"""
        if isinstance(text, Budget):
            return text
        if isinstance(text, int):
            return cls(text)
        match = re.fullmatch(r"\s*([0-9]+(?:\.[0-9]*)?(?:[eE]\+?[0-9]+)?)\s*(nodes|iters|eff-iters)?\s*", text)
        if not match:
            raise ConfigurationError(f"预算格式错误: {text!r}，应为 <n>[nodes|iters|eff-iters]")
        value = float(match.group(1))
        if not value.is_integer():
            raise ConfigurationError(f"预算必须是整数: {text!r}")
        return cls(int(value), match.group(2) or "iters")

    def exhausted(self, state: SolverState, nodes_touched: int) -> bool:
        if self.unit == "nodes":
            return nodes_touched >= self.amount
        if self.unit == "iters":
            return state.meta_iteration >= self.amount
        return state.effective_iteration >= self.amount

    def effective_remaining(self, state: SolverState) -> Optional[int]:
        if self.unit != "eff-iters":
            return None
        return self.amount - state.effective_iteration

    def __str__(self) -> str:
        return f"{self.amount}{self.unit}"


def greedy_actions(q_values: np.ndarray, action_mask: np.ndarray) -> np.ndarray:
    """每个信息集 Q 最大的动作，平局取编号最小者"""
    return np.argmax(np.where(action_mask, q_values, -np.inf), axis=1)


def q_to_strategy(state: SolverState) -> np.ndarray:
    """把 Q 值转成纯策略：每个信息集在 argmax 上取概率 1"""
    actions = greedy_actions(state.q_or_regret, state.action_mask)
    profile = np.zeros(state.action_mask.shape)
    profile[np.arange(len(actions)), actions] = 1.0
    return profile


def regret_matching_profile(regrets: np.ndarray, action_mask: np.ndarray) -> np.ndarray:
    """按正遗憾比例出招，全部非正的信息集取均匀分布"""
    positive = np.where(action_mask, np.maximum(regrets, 0.0), 0.0)
    totals = positive.sum(axis=1, keepdims=True)
    uniform = action_mask / action_mask.sum(axis=1, keepdims=True)
    return np.where(totals > 0, positive / np.where(totals > 0, totals, 1.0), uniform)


@lru_cache(maxsize=16)
def _terminal_weights(tree: GameTree) -> Tuple[float, ...]:
    # 终局节点的机会计数 × 玩家1收益，整数收益时为整数
    return tuple(
        float(weight * node.utility) if node.kind is NodeKind.TERMINAL else 0.0
        for weight, node in zip(tree.chance_weight.tolist(), tree.nodes)
    )


def strategy_to_values(tree: GameTree, profile: Profile) -> ValueTable:
    """
    一次遍历同时计算双方的反事实动作值

    子节点处双方自身到达概率都为 0 时整棵子树跳过，不计入访问数；
    这样跳过的子树对任何反事实值的贡献都是 0

    Args:
        tree: 博弈树
        profile: 完整策略

    Returns:
        ValueTable
    """
    probs = validate_profile(tree, profile).tolist()
    nodes = tree.nodes
    terminal = _terminal_weights(tree)
    chance = tree.chance_probability.tolist()
    infoset_count, width = tree.action_mask.shape

    cfv = [[0.0] * width for _ in range(infoset_count)]
    opp_reach = [0.0] * infoset_count
    own_reach = [0.0] * infoset_count
    reach1 = [0.0] * len(nodes)
    reach2 = [0.0] * len(nodes)
    touched = 0

    def visit(index: int, p1: float, p2: float) -> float:
        nonlocal touched
        touched += 1
        reach1[index] = p1
        reach2[index] = p2
        node = nodes[index]
        if node.kind is NodeKind.TERMINAL:
            return terminal[index]
        if node.kind is NodeKind.CHANCE:
            # 机会概率已计入终局权重，这里直接求和
            return sum(visit(child, p1, p2) for child in node.children)

        row = probs[node.infoset]
        values = []
        total = 0.0
        for action, child in enumerate(node.children):
            if node.player == 1:
                c1, c2 = p1 * row[action], p2
            else:
                c1, c2 = p1, p2 * row[action]
            value = visit(child, c1, c2) if (c1 != 0.0 or c2 != 0.0) else 0.0
            values.append(value)
            total += row[action] * value

        if node.player == 1:
            own, opp, sign = p1, p2, 1.0
        else:
            own, opp, sign = p2, p1, -1.0
        if opp != 0.0:
            target = cfv[node.infoset]
            for action, value in enumerate(values):
                target[action] += opp * sign * value
        opp_reach[node.infoset] += opp * chance[index]
        own_reach[node.infoset] = max(own_reach[node.infoset], own)
        return total

    root_value = visit(tree.root, 1.0, 1.0)
    reach = ReachWeights.from_player_reach(tree, np.array([reach1, reach2]))
    return ValueTable(
        cfv=np.array(cfv),
        scale=tree.chance_scale,
        opp_reach=np.array(opp_reach),
        own_reach=np.array(own_reach),
        reach=reach,
        nodes_touched=touched,
        root_value=root_value,
    )


def compute_pursuit_ef(state: SolverState, values: ValueTable,
                       budget_remaining: Optional[int] = None) -> PursuitResultEF:
    """
    计算每个 (信息集, 动作) 的 Q 差距、追赶速度和追赶时间，以及同步阶段长度

    速度是该动作与当前动作的反事实值之差；最小值取遍双方全部信息集。
    当前策略不是 Q 的贪心策略时（例如第 0 次随机初始化）阶段长度固定为 1

    Args:
        state: 求解器状态，current_profile 为本轮执行的纯策略
        values: 本轮策略的反事实值
        budget_remaining: 剩余有效迭代预算

    Returns:
        PursuitResultEF
    """
    mask = state.action_mask
    q = np.where(mask, state.q_or_regret, -np.inf)
    gap = np.where(mask, q.max(axis=1, keepdims=True) - q, 0.0)

    current = np.argmax(state.current_profile, axis=1)
    rows = np.arange(len(current))
    speed = np.where(mask, values.cfv - values.cfv[rows, current][:, None], 0.0)
    times = np.where(mask, pursue_times(gap, speed), np.inf)

    greedy = np.array_equal(current, greedy_actions(state.q_or_regret, mask))
    if state.meta_iteration == 0 or not greedy:
        return PursuitResultEF(gap, speed, times, 1)

    shortest = float(times.min()) if times.size else float("inf")
    length, stationary = resolve_phase_length(shortest, budget_remaining)
    return PursuitResultEF(gap, speed, times, length, stationary)


def update_q_values(state: SolverState, values: ValueTable, mode: str,
                    budget_remaining: Optional[int] = None) -> int:
    """
    Q(I,a) += w · v(I,a)

    Args:
        state: 求解器状态（原地修改）
        values: 本轮反事实值
        mode: "pcfr" 时 w 恒为 1，"sync" 时 w 为同步阶段长度
        budget_remaining: 剩余有效迭代预算

    Returns:
        实际使用的阶段长度 w
    """
    if mode not in Q_MODES:
        raise ConfigurationError(f"未知 Q 值更新模式: {mode}")
    length = 1
    state.stationary = False
    if mode == "sync":
        pursuit = compute_pursuit_ef(state, values, budget_remaining)
        length = pursuit.phase_length
        state.stationary = pursuit.stationary
    state.q_or_regret += length * values.cfv
    return length


def update_average(state: SolverState, tree: GameTree, profile: np.ndarray, phase_length: int,
                   reach: ReachWeights, player: Optional[int] = None) -> None:
    """
    平均策略分子 += w · π^i(I) · σ(I, a)

    Args:
        player: 只更新该玩家的信息集；None 表示双方
    """
    own = reach.infoset_own_reach(tree)
    increment = phase_length * own[:, None] * profile
    if player is not None:
        increment[tree.infoset_players != player] = 0.0
    state.avg_numerator += increment


def normalize_average(state: SolverState) -> np.ndarray:
    """归一化平均策略分子，总量为 0 的信息集取均匀分布"""
    mask = state.action_mask
    totals = state.avg_numerator.sum(axis=1, keepdims=True)
    uniform = mask / mask.sum(axis=1, keepdims=True)
    safe = np.where(totals > 0, totals, 1.0)
    return np.where(totals > 0, state.avg_numerator / safe, uniform)


class Solver:
    """求解器基类：子类实现 step()，一次 step 是一次元迭代"""

    name = ""
    random_pure_start = False

    def __init__(self, tree: GameTree, seed: int = 0):
        self.tree = tree
        self.seed = seed
        self.state = SolverState.initial(tree, seed, self.random_pure_start)
        self.touches = TouchCounter()

    def step(self, budget_remaining: Optional[int] = None) -> int:
        raise NotImplementedError

    def average_profile(self) -> np.ndarray:
        return normalize_average(self.state)

    def run(self, budget: Union[Budget, str, int], evaluate_when: Optional[EvaluationCheck] = None,
            wall_time: bool = True) -> List[IterationRecord]:
        """
        运行到预算用完

        Args:
            budget: 预算
            evaluate_when: 决定哪些记录需要计算可利用度；None 时只评估最后一条
            wall_time: 是否记录耗时，关闭后 wall_time_ms 恒为 0

        Returns:
            每次元迭代一条 IterationRecord
        """
        budget = Budget.parse(budget)
        records: List[IterationRecord] = []
        elapsed = 0.0

        while not budget.exhausted(self.state, self.touches.cumulative):
            started = time.perf_counter()
            length = self.step(budget.effective_remaining(self.state))
            elapsed += time.perf_counter() - started

            final = budget.exhausted(self.state, self.touches.cumulative)
            record = IterationRecord(
                meta_iteration=self.state.meta_iteration,
                effective_iteration=self.state.effective_iteration,
                w_pst=length,
                nodes_touched=self.touches.cumulative,
                wall_time_ms=round(elapsed * 1000, 3) if wall_time else 0.0,
            )
            due = final if evaluate_when is None else evaluate_when(
                record.meta_iteration, record.nodes_touched, final)
            if due or final:
                record.exploitability = exploitability(self.tree, self.average_profile()).exploitability
            records.append(record)
            logger.debug(
                "%s t=%d w=%d eff=%d touched=%d",
                self.name, record.meta_iteration, length, record.effective_iteration,
                self.touches.per_iteration[-1],
            )

        logger.info(
            f"{self.name} @ {self.tree.name} (seed={self.seed}) 完成: "
            f"{self.state.meta_iteration} 次元迭代, {self.state.effective_iteration} 次有效迭代, "
            f"累计访问 {self.touches.cumulative} 个节点"
            + (", 策略已静止" if self.state.stationary else "")
        )
        return records


class PCFRSolver(Solver):
    """纯最优反应 CFR：每轮对 Q 值取 argmax，Q 累加反事实值"""

    name = "pcfr"
    mode = "pcfr"
    random_pure_start = True

    def step(self, budget_remaining: Optional[int] = None) -> int:
        state = self.state
        if state.meta_iteration > 0:
            state.current_profile = q_to_strategy(state)
        values = strategy_to_values(self.tree, state.current_profile)
        length = update_q_values(state, values, self.mode, budget_remaining)
        update_average(state, self.tree, state.current_profile, length, values.reach)
        state.meta_iteration += 1
        state.effective_iteration += length
        self.touches.add(values.nodes_touched)
        return length


class SyncPCFRSolver(PCFRSolver):
    """在最优反应不变的同步阶段内一次性跳过 w 次迭代"""

    name = "sync-pcfr"
    mode = "sync"


class CFRSolver(Solver):
    """原始 CFR：双方同时更新，遗憾匹配，按到达概率均匀加权平均"""

    name = "cfr"

    def step(self, budget_remaining: Optional[int] = None) -> int:
        state = self.state
        profile = regret_matching_profile(state.q_or_regret, state.action_mask)
        state.current_profile = profile
        values = strategy_to_values(self.tree, profile)
        expected = (profile * values.cfv).sum(axis=1, keepdims=True)
        state.q_or_regret += np.where(state.action_mask, values.cfv - expected, 0.0)
        update_average(state, self.tree, profile, 1, values.reach)
        state.meta_iteration += 1
        state.effective_iteration += 1
        self.touches.add(values.nodes_touched)
        return 1


class CFRPlusSolver(Solver):
    """CFR+：交替更新，遗憾在每次更新后截断到 0，平均策略按迭代序号线性加权"""

    name = "cfrplus"

    def step(self, budget_remaining: Optional[int] = None) -> int:
        state = self.state
        weight = state.meta_iteration + 1
        touched = 0
        for player in (1, 2):
            profile = regret_matching_profile(state.q_or_regret, state.action_mask)
            values = strategy_to_values(self.tree, profile)
            touched += values.nodes_touched
            rows = self.tree.infoset_players == player
            expected = (profile * values.cfv).sum(axis=1, keepdims=True)
            updated = np.maximum(state.q_or_regret + values.cfv - expected, 0.0)
            state.q_or_regret[rows] = np.where(state.action_mask, updated, 0.0)[rows]
            update_average(state, self.tree, profile, weight, values.reach, player=player)
        state.current_profile = regret_matching_profile(state.q_or_regret, state.action_mask)
        state.meta_iteration += 1
        state.effective_iteration += 1
        self.touches.add(touched)
        return 1


SOLVERS: Dict[str, Type[Solver]] = {
    "cfr": CFRSolver,
    "cfrplus": CFRPlusSolver,
    "pcfr": PCFRSolver,
    "sync-pcfr": SyncPCFRSolver,
}


def create_solver(algorithm: str, tree: GameTree, seed: int = 0) -> Solver:
    if algorithm not in SOLVERS:
        raise ConfigurationError(f"未知算法: {algorithm}，可选: {', '.join(SOLVERS)}")
    return SOLVERS[algorithm](tree, seed)


def _run(algorithm: str, tree: GameTree, budget: Union[Budget, str, int], seed: int,
         evaluate_when: Optional[EvaluationCheck] = None,
         wall_time: bool = True) -> Tuple[np.ndarray, List[IterationRecord]]:
    solver = create_solver(algorithm, tree, seed)
    records = solver.run(budget, evaluate_when, wall_time)
    return solver.average_profile(), records


def run_cfr(tree: GameTree, budget: Union[Budget, str, int], seed: int = 0,
            evaluate_when: Optional[EvaluationCheck] = None,
            wall_time: bool = True) -> Tuple[np.ndarray, List[IterationRecord]]:
    return _run("cfr", tree, budget, seed, evaluate_when, wall_time)


def run_cfrplus(tree: GameTree, budget: Union[Budget, str, int], seed: int = 0,
                evaluate_when: Optional[EvaluationCheck] = None,
                wall_time: bool = True) -> Tuple[np.ndarray, List[IterationRecord]]:
    return _run("cfrplus", tree, budget, seed, evaluate_when, wall_time)


def run_pcfr(tree: GameTree, budget: Union[Budget, str, int], seed: int = 0,
             evaluate_when: Optional[EvaluationCheck] = None,
             wall_time: bool = True) -> Tuple[np.ndarray, List[IterationRecord]]:
    return _run("pcfr", tree, budget, seed, evaluate_when, wall_time)


def run_sync_pcfr(tree: GameTree, budget: Union[Budget, str, int], seed: int = 0,
                  evaluate_when: Optional[EvaluationCheck] = None,
                  wall_time: bool = True) -> Tuple[np.ndarray, List[IterationRecord]]:
    """
    运行 sync PCFR

    第 0 次元迭代执行按 seed 随机选取的纯策略；之后每轮取 Q 的 argmax，
    一次遍历算出反事实值，按同步阶段长度 w 更新 Q 与平均策略

    Returns:
        (归一化的平均策略, 每次元迭代的记录)
    """
    return _run("sync-pcfr", tree, budget, seed, evaluate_when, wall_time)


def dump_state(solver: Solver) -> str:
    """
    输出求解器状态的文本快照

    每行: 信息集编号、键名、Q/遗憾向量（真实单位）、平均策略分子向量
    """
    tree = solver.tree
    scale = tree.chance_scale
    lines = []
    for info in tree.infosets:
        q = solver.state.q_or_regret[info.id, : info.num_actions] / scale
        avg = solver.state.avg_numerator[info.id, : info.num_actions]
        lines.append("\t".join([
            str(info.id),
            f"P{info.player}:{info.key}",
            ",".join(f"{value:.17g}" for value in q),
            ",".join(f"{value:.17g}" for value in avg),
        ]))
    return "\n".join(lines) + "\n"

#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
矩阵博弈求解模块
虚拟博弈（FP）、基于 Q 值的同步虚拟博弈（sync FP）与遗憾匹配（RM）
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass, replace
from pathlib import Path
from typing import List, Optional, Tuple

import numpy as np

from game_core import ConfigurationError

logger = logging.getLogger(__name__)

ROCK_PAPER_SCISSORS = [[0, -1, 1], [1, 0, -1], [-1, 1, 0]]
MATCHING_PENNIES = [[1, -1], [-1, 1]]


@dataclass(frozen=True)
class MatrixGame:
    """零和矩阵博弈，payoff 为玩家1（行玩家）的收益"""

    payoff: np.ndarray
    name: str = "matrix"

    def __post_init__(self):
        payoff = np.asarray(self.payoff, dtype=float)
        if payoff.ndim != 2 or min(payoff.shape) < 1:
            raise ConfigurationError(f"收益矩阵至少需要 1x1: {payoff.shape}")
        if not np.all(np.isfinite(payoff)):
            raise ConfigurationError("收益矩阵包含非有限值")
        payoff.flags.writeable = False
        object.__setattr__(self, "payoff", payoff)

    @property
    def num_actions(self) -> Tuple[int, int]:
        return self.payoff.shape

    def payoff_against(self, player: int, opponent_action: int) -> np.ndarray:
        """u^i(·, a^{-i})：对手出纯动作时本方每个动作的收益"""
        if player == 1:
            return self.payoff[:, opponent_action]
        return -self.payoff[opponent_action, :]

    def expected_payoffs(self, player: int, opponent_strategy: np.ndarray) -> np.ndarray:
        """u^i(·, σ^{-i})"""
        if player == 1:
            return self.payoff @ opponent_strategy
        return -(opponent_strategy @ self.payoff)


@dataclass(frozen=True)
class FPState:
    """
    虚拟博弈状态

    t 为有效迭代次数；q_values[i][a] 为动作 a 对对手历史最优反应累计的收益，
    因而 argmax Q 就是对平均策略的最优反应。t = 0 时 current_br 是随机初始纯策略
    """

    t: int
    avg_strategy: Tuple[np.ndarray, np.ndarray]
    q_values: Tuple[np.ndarray, np.ndarray]
    current_br: Tuple[int, int]


@dataclass(frozen=True)
class PursuitResultNF:
    gap: Tuple[np.ndarray, np.ndarray]
    speed: Tuple[np.ndarray, np.ndarray]
    pursue_time: Tuple[np.ndarray, np.ndarray]
    phase_length: int
    stationary: bool = False


@dataclass(frozen=True)
class RMState:
    regrets: Tuple[np.ndarray, np.ndarray]
    strategy_sum: Tuple[np.ndarray, np.ndarray]
    t: int = 0

    def average(self) -> Tuple[np.ndarray, np.ndarray]:
        if self.t == 0:
            return tuple(regret_matching(np.zeros_like(r)) for r in self.regrets)
        return tuple(total / self.t for total in self.strategy_sum)


@dataclass
class MatrixRecord:
    t: int
    br_p1: int
    br_p2: int
    phase_length: int
    exploitability: float


def load_matrix_game(source: str) -> MatrixGame:
    """
    按名称或文件加载矩阵博弈

    内置: rps、matching-pennies、diag-<k>；
    否则把 source 当作文本文件：首行 "rows cols"，随后按行优先给出玩家1收益

    Args:
        source: 内置名称或文件路径

    Returns:
        MatrixGame
    """
    if source == "rps":
        return MatrixGame(np.array(ROCK_PAPER_SCISSORS), name="rps")
    if source == "matching-pennies":
        return MatrixGame(np.array(MATCHING_PENNIES), name="matching-pennies")
    if source.startswith("diag-"):
        try:
            size = int(source[len("diag-"):])
        except ValueError:
            raise ConfigurationError(f"diag 博弈的规模无效: {source}") from None
        if size < 1:
            raise ConfigurationError(f"diag 博弈的规模必须为正: {source}")
        return MatrixGame(np.eye(size), name=source)

    path = Path(source)
    if not path.is_file():
        raise ConfigurationError(f"未知矩阵博弈: {source}（内置: rps, matching-pennies, diag-<k>）")
    tokens = path.read_text(encoding="utf-8").split()
    try:
        rows, cols = int(tokens[0]), int(tokens[1])
        values = [float(token) for token in tokens[2:]]
    except (IndexError, ValueError) as e:
        raise ConfigurationError(f"矩阵文件格式错误 {path}: {e}") from None
    if rows < 1 or cols < 1 or len(values) != rows * cols:
        raise ConfigurationError(f"矩阵文件 {path} 需要 {rows}x{cols} 个收益，实际 {len(values)} 个")
    return MatrixGame(np.array(values).reshape(rows, cols), name=path.stem)


def _one_hot(size: int, index: int) -> np.ndarray:
    vector = np.zeros(size)
    vector[index] = 1.0
    return vector


def initial_fp_state(game: MatrixGame, seed: int) -> FPState:
    """随机选取双方的初始纯策略，Q 从 0 开始"""
    rng = np.random.default_rng(seed)
    rows, cols = game.num_actions
    br = (int(rng.integers(rows)), int(rng.integers(cols)))
    return FPState(
        t=0,
        avg_strategy=(_one_hot(rows, br[0]), _one_hot(cols, br[1])),
        q_values=(np.zeros(rows), np.zeros(cols)),
        current_br=br,
    )


def _advance(game: MatrixGame, state: FPState, length: int) -> FPState:
    # 固定 b 连续执行 length 次平均策略更新的闭式解
    weight = length / (state.t + length)
    b1, b2 = state.current_br
    rows, cols = game.num_actions
    avg1 = (1 - weight) * state.avg_strategy[0] + weight * _one_hot(rows, b1)
    avg2 = (1 - weight) * state.avg_strategy[1] + weight * _one_hot(cols, b2)
    q1 = state.q_values[0] + length * game.payoff_against(1, b2)
    q2 = state.q_values[1] + length * game.payoff_against(2, b1)
    return FPState(
        t=state.t + length,
        avg_strategy=(avg1, avg2),
        q_values=(q1, q2),
        current_br=(int(np.argmax(q1)), int(np.argmax(q2))),
    )


def fp_step(game: MatrixGame, state: FPState) -> FPState:
    """
    一步虚拟博弈

    σ̄_{t+1} = (1 - 1/(t+1)) σ̄_t + 1/(t+1) b(σ̄_t)，同时按对手当前最优反应累加 Q
    """
    return _advance(game, state, 1)


def pursue_times(gap: np.ndarray, speed: np.ndarray) -> np.ndarray:
    """
    追赶时间：gap>0 且 speed>0 时为 ceil(gap/speed)；
    gap=0 且 speed>0 时为 1（并列动作下一步就会反超）；其余为无穷
    """
    gap = np.asarray(gap, dtype=float)
    speed = np.asarray(speed, dtype=float)
    moving = speed > 0
    # 用向下取整除法实现向上取整，整数输入时结果精确
    steps = -np.floor_divide(-gap, np.where(moving, speed, 1.0))
    times = np.where(moving & (gap > 0), steps, np.inf)
    return np.where(moving & (gap == 0), 1.0, times)


def resolve_phase_length(shortest: float, budget_remaining: Optional[int]) -> Tuple[int, bool]:
    """
    把最短追赶时间换算成实际跳过的同步阶段长度

    Returns:
        (阶段长度, 是否静止)。全部为无穷时策略不再变化：有预算则用完剩余预算，否则取 1
    """
    if math.isinf(shortest):
        length = budget_remaining if budget_remaining is not None else 1
        return max(1, int(length)), True
    length = max(1, int(shortest))
    if budget_remaining is not None:
        length = min(length, budget_remaining)
    return max(1, length), False


def compute_pursuit_nf(game: MatrixGame, state: FPState,
                       budget_remaining: Optional[int] = None) -> PursuitResultNF:
    """
    计算双方每个动作的差距、追赶速度与追赶时间，以及同步阶段长度

    Args:
        game: 矩阵博弈
        state: 当前状态
        budget_remaining: 剩余有效迭代预算，用于截断阶段长度

    Returns:
        PursuitResultNF
    """
    gaps, speeds, times = [], [], []
    for player in (1, 2):
        q = state.q_values[player - 1]
        best = state.current_br[player - 1]
        opponent = state.current_br[2 - player]
        payoff = game.payoff_against(player, opponent)
        gap = q.max() - q
        speed = payoff - payoff[best]
        gaps.append(gap)
        speeds.append(speed)
        times.append(pursue_times(gap, speed))

    greedy = all(
        state.current_br[i] == int(np.argmax(state.q_values[i])) for i in range(2)
    )
    if state.t == 0 or not greedy:
        # 初始随机策略不是 Q 的 argmax，追赶分析不适用
        return PursuitResultNF(tuple(gaps), tuple(speeds), tuple(times), 1)

    shortest = min(float(t.min()) for t in times)
    length, stationary = resolve_phase_length(shortest, budget_remaining)
    return PursuitResultNF(tuple(gaps), tuple(speeds), tuple(times), length, stationary)


def sync_fp_step(game: MatrixGame, state: FPState, budget_remaining: int) -> Tuple[FPState, int]:
    """
    一步同步虚拟博弈：算出同步阶段长度 w 后一次性跳过

    Returns:
        (新状态, w)
    """
    if budget_remaining < 1:
        raise ConfigurationError(f"剩余预算必须至少为 1: {budget_remaining}")
    pursuit = compute_pursuit_nf(game, state, budget_remaining)
    if pursuit.stationary:
        logger.debug(f"t={state.t} 最优反应不再变化，直接用完剩余预算 {pursuit.phase_length}")
    return _advance(game, state, pursuit.phase_length), pursuit.phase_length


def regret_matching(regrets: np.ndarray) -> np.ndarray:
    """按正遗憾比例出招，全部非正时均匀"""
    positive = np.maximum(regrets, 0.0)
    total = positive.sum()
    if total <= 0:
        return np.full(len(regrets), 1.0 / len(regrets))
    return positive / total


def initial_rm_state(game: MatrixGame) -> RMState:
    rows, cols = game.num_actions
    return RMState(
        regrets=(np.zeros(rows), np.zeros(cols)),
        strategy_sum=(np.zeros(rows), np.zeros(cols)),
    )


def rm_step(game: MatrixGame, state: RMState) -> RMState:
    """同时更新的一步遗憾匹配"""
    s1 = regret_matching(state.regrets[0])
    s2 = regret_matching(state.regrets[1])
    u1 = game.expected_payoffs(1, s2)
    u2 = game.expected_payoffs(2, s1)
    return replace(
        state,
        regrets=(state.regrets[0] + u1 - s1 @ u1, state.regrets[1] + u2 - s2 @ u2),
        strategy_sum=(state.strategy_sum[0] + s1, state.strategy_sum[1] + s2),
        t=state.t + 1,
    )


def matrix_exploitability(game: MatrixGame, x: np.ndarray, y: np.ndarray) -> float:
    """双方最优反应收益的平均值"""
    return float((np.max(game.payoff @ y) - np.min(x @ game.payoff)) / 2)


def _record(game: MatrixGame, state: FPState, previous: FPState, length: int) -> MatrixRecord:
    return MatrixRecord(
        t=state.t,
        br_p1=previous.current_br[0],
        br_p2=previous.current_br[1],
        phase_length=length,
        exploitability=matrix_exploitability(game, *state.avg_strategy),
    )


def run_fp(game: MatrixGame, iterations: int, seed: int) -> Tuple[FPState, List[MatrixRecord]]:
    """运行 iterations 步原始虚拟博弈"""
    if iterations < 1:
        raise ConfigurationError(f"迭代次数必须为正: {iterations}")
    state = initial_fp_state(game, seed)
    records = []
    for _ in range(iterations):
        next_state = fp_step(game, state)
        records.append(_record(game, next_state, state, 1))
        state = next_state
    return state, records


def run_sync_fp(game: MatrixGame, budget: int, seed: int) -> Tuple[FPState, List[MatrixRecord]]:
    """运行同步虚拟博弈直到有效迭代次数恰好达到 budget"""
    if budget < 1:
        raise ConfigurationError(f"迭代预算必须为正: {budget}")
    state = initial_fp_state(game, seed)
    records = []
    while state.t < budget:
        next_state, length = sync_fp_step(game, state, budget - state.t)
        records.append(_record(game, next_state, state, length))
        state = next_state
    logger.debug(f"{game.name}: sync FP 用 {len(records)} 步完成 {state.t} 次有效迭代")
    return state, records


def run_rm(game: MatrixGame, iterations: int) -> Tuple[RMState, List[MatrixRecord]]:
    """运行 iterations 步遗憾匹配，记录平均策略的可利用度"""
    if iterations < 1:
        raise ConfigurationError(f"迭代次数必须为正: {iterations}")
    state = initial_rm_state(game)
    records = []
    for _ in range(iterations):
        state = rm_step(game, state)
        x, y = state.average()
        records.append(MatrixRecord(
            t=state.t,
            br_p1=int(np.argmax(game.expected_payoffs(1, y))),
            br_p2=int(np.argmax(game.expected_payoffs(2, x))),
            phase_length=1,
            exploitability=matrix_exploitability(game, x, y),
        ))
    return state, records

# -*- coding: utf-8 -*-
"""
测试共用夹具与独立校验器
暴力期望搜索、穷举纯策略最优反应、序列型线性规划
"""

from __future__ import annotations

from fractions import Fraction
from itertools import product
from typing import Dict, List, Optional, Tuple

import numpy as np
import pytest
from scipy.optimize import linprog

from game_core import GameTree, GameTreeBuilder, NodeKind, build_matrix_tree, load_game

KUHN_VALUE = -1.0 / 18.0
RPS = [[0, -1, 1], [1, 0, -1], [-1, 1, 0]]


def kuhn_nash_profile(tree: GameTree) -> np.ndarray:
    """Kuhn 扑克的解析均衡（玩家1 持 J 从不诈唬的那一支）"""
    rows = {
        (1, "J:"): [1, 0], (1, "Q:"): [1, 0], (1, "K:"): [1, 0],
        (1, "J:kb"): [1, 0], (1, "Q:kb"): [2 / 3, 1 / 3], (1, "K:kb"): [0, 1],
        (2, "J:b"): [1, 0], (2, "Q:b"): [2 / 3, 1 / 3], (2, "K:b"): [0, 1],
        (2, "J:k"): [2 / 3, 1 / 3], (2, "Q:k"): [1, 0], (2, "K:k"): [0, 1],
    }
    profile = np.zeros(tree.action_mask.shape)
    for (player, key), row in rows.items():
        profile[tree.infoset_by_key(player, key).id, :2] = row
    return profile


def build_dyadic_toy() -> GameTree:
    """机会概率为 2 的幂、收益为整数的小博弈，玩家1 无法区分 b 与 c"""
    payoffs = {
        "a": {"L": (3, -1), "R": (-2, 2)},
        "b": {"L": (-1, 4), "R": (0, -3)},
        "c": {"L": (2, -2), "R": (-4, 1)},
    }
    builder = GameTreeBuilder("dyadic-toy")
    root = builder.chance()
    for outcome, probability in (("a", Fraction(1, 2)), ("b", Fraction(1, 4)), ("c", Fraction(1, 4))):
        seen = "a" if outcome == "a" else "bc"
        first = builder.decision(1, seen, ("L", "R"), root, probability=probability, history=outcome)
        for move in ("L", "R"):
            second = builder.decision(2, move, ("x", "y"), first, history=f"{outcome}{move}")
            for utility, answer in zip(payoffs[outcome][move], "xy"):
                builder.terminal(utility, second, history=f"{outcome}{move}{answer}")
    return builder.build()


def expectimax(tree: GameTree, profile: np.ndarray, index: Optional[int] = None) -> float:
    """从 index 出发、按 profile 与机会概率展开的玩家1期望收益"""
    node = tree.nodes[tree.root if index is None else index]
    if node.kind is NodeKind.TERMINAL:
        return node.utility
    if node.kind is NodeKind.CHANCE:
        return sum(float(p) * expectimax(tree, profile, child)
                   for p, child in zip(node.chance_probs, node.children))
    row = profile[node.infoset]
    return sum(row[a] * expectimax(tree, profile, child) for a, child in enumerate(node.children))


def opponent_reach(tree: GameTree, profile: np.ndarray, index: int, player: int) -> float:
    """沿父节点回溯求 π^{-i}(h)：对手动作概率与机会概率之积"""
    reach = 1.0
    child = index
    parent = tree.nodes[child].parent
    while parent is not None:
        node = tree.nodes[parent]
        position = node.children.index(child)
        if node.kind is NodeKind.CHANCE:
            reach *= float(node.chance_probs[position])
        elif node.player != player:
            reach *= profile[node.infoset, position]
        child, parent = parent, node.parent
    return reach


def counterfactual_oracle(tree: GameTree, profile: np.ndarray, infoset: int) -> List[float]:
    """直接按定义计算 v(I, a)"""
    info = tree.infosets[infoset]
    sign = 1.0 if info.player == 1 else -1.0
    values = []
    for action in range(info.num_actions):
        total = 0.0
        for member in info.member_nodes:
            child = tree.nodes[member].children[action]
            total += opponent_reach(tree, profile, member, info.player) * sign * expectimax(tree, profile, child)
        values.append(total)
    return values


def pure_best_response(tree: GameTree, profile: np.ndarray, responder: int) -> float:
    """穷举 responder 的全部纯策略求最优反应值"""
    infosets = [info for info in tree.infosets if info.player == responder]
    sign = 1.0 if responder == 1 else -1.0
    best = -np.inf
    for choice in product(*(range(info.num_actions) for info in infosets)):
        candidate = profile.copy()
        for info, action in zip(infosets, choice):
            candidate[info.id] = 0.0
            candidate[info.id, action] = 1.0
        best = max(best, sign * expectimax(tree, candidate))
    return best


def _sequences(tree: GameTree, player: int) -> Tuple[Dict[Tuple[int, int], int], Dict[int, int]]:
    # 序列编号（0 为空序列）与每个信息集的父序列
    index = {(-1, -1): 0}
    parent_of: Dict[int, int] = {}
    for info in tree.infosets:
        if info.player != player:
            continue
        for action in range(info.num_actions):
            index[(info.id, action)] = len(index)
    for info in tree.infosets:
        if info.player == player:
            parent_of[info.id] = index[_last_sequence(tree, info.member_nodes[0], player)]
    return index, parent_of


def _last_sequence(tree: GameTree, index: int, player: int) -> Tuple[int, int]:
    child = index
    parent = tree.nodes[child].parent
    while parent is not None:
        node = tree.nodes[parent]
        if node.kind is NodeKind.DECISION and node.player == player:
            return node.infoset, node.children.index(child)
        child, parent = parent, node.parent
    return -1, -1


def sequence_form_value(tree: GameTree) -> float:
    """序列型线性规划求玩家1的博弈值"""
    seq1, parents1 = _sequences(tree, 1)
    seq2, parents2 = _sequences(tree, 2)
    payoff = np.zeros((len(seq1), len(seq2)))
    for z in tree.terminal_nodes:
        s1 = seq1[_last_sequence(tree, int(z), 1)]
        s2 = seq2[_last_sequence(tree, int(z), 2)]
        payoff[s1, s2] += tree.chance_probability[z] * tree.terminal_utility[z]

    def constraints(sequences, parents) -> Tuple[np.ndarray, np.ndarray]:
        matrix = np.zeros((len(parents) + 1, len(sequences)))
        rhs = np.zeros(len(parents) + 1)
        matrix[0, 0] = 1.0
        rhs[0] = 1.0
        for row, (infoset, parent) in enumerate(sorted(parents.items()), 1):
            matrix[row, parent] = -1.0
            for (owner, _), column in sequences.items():
                if owner == infoset:
                    matrix[row, column] = 1.0
        return matrix, rhs

    e_matrix, e_rhs = constraints(seq1, parents1)
    f_matrix, f_rhs = constraints(seq2, parents2)
    n1, k2 = len(seq1), f_matrix.shape[0]

    # 变量 [x, q]：max f·q  s.t.  Fᵀq - Aᵀx ≤ 0,  Ex = e,  x ≥ 0
    objective = np.concatenate([np.zeros(n1), -f_rhs])
    a_ub = np.hstack([-payoff.T, f_matrix.T])
    a_eq = np.hstack([e_matrix, np.zeros((e_matrix.shape[0], k2))])
    bounds = [(0, None)] * n1 + [(None, None)] * k2
    result = linprog(objective, A_ub=a_ub, b_ub=np.zeros(len(seq2)), A_eq=a_eq, b_eq=e_rhs,
                     bounds=bounds, method="highs")
    assert result.success, result.message
    return float(-result.fun)


@pytest.fixture(scope="session")
def kuhn() -> GameTree:
    return load_game("kuhn")


@pytest.fixture(scope="session")
def leduc() -> GameTree:
    return load_game("leduc")


@pytest.fixture(scope="session")
def kuhn_nash(kuhn) -> np.ndarray:
    return kuhn_nash_profile(kuhn)


@pytest.fixture(scope="session")
def rps_tree() -> GameTree:
    return build_matrix_tree(RPS, name="rps")


@pytest.fixture(scope="session")
def dyadic_toy() -> GameTree:
    return build_dyadic_toy()

#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
评估指标模块
最优反应值、可利用度、博弈值与节点访问计数
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field
from typing import Dict, List

import numpy as np

from game_core import GameTree, NodeKind, Profile, compute_reach, validate_profile

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class ExploitabilityReport:
    """单位为筹码；exploitability 是两名玩家最优反应值的平均"""

    br_value_p1: float
    br_value_p2: float
    nash_conv: float
    exploitability: float


@dataclass
class TouchCounter:
    cumulative: int = 0
    per_iteration: List[int] = field(default_factory=list)

    def add(self, touched: int) -> None:
        if touched < 0:
            raise ValueError(f"节点访问数不能为负: {touched}")
        self.per_iteration.append(int(touched))
        self.cumulative += int(touched)


def best_response_value(tree: GameTree, profile: Profile, responder: int) -> float:
    """
    计算 responder 对 profile 中对手策略的最优反应收益

    在 responder 的信息集上按信息集整体取最大（成员节点按对手与机会到达概率加权求和），
    平局取编号最小的动作；其余节点按策略或机会概率取期望

    Args:
        tree: 博弈树
        profile: 完整策略，只使用对手的部分
        responder: 1 或 2

    Returns:
        responder 的期望收益（筹码）
    """
    if responder not in (1, 2):
        raise ValueError(f"responder 必须是 1 或 2: {responder}")
    probs = validate_profile(tree, profile)
    reach = compute_reach(tree, probs)
    # 对手与机会的到达概率；responder 自己的概率在最优反应里被替换掉
    weight = reach.player_reach[2 - responder] * tree.chance_probability
    sign = 1.0 if responder == 1 else -1.0

    values: Dict[int, float] = {}
    choices: Dict[int, int] = {}

    def node_value(index: int) -> float:
        if index in values:
            return values[index]
        node = tree.nodes[index]
        if node.kind is NodeKind.TERMINAL:
            value = weight[index] * sign * node.utility
        elif node.kind is NodeKind.DECISION and node.player == responder:
            value = node_value(node.children[best_action(node.infoset)])
        else:
            value = sum(node_value(child) for child in node.children)
        values[index] = value
        return value

    def best_action(infoset: int) -> int:
        if infoset not in choices:
            info = tree.infosets[infoset]
            totals = [
                sum(node_value(tree.nodes[member].children[action]) for member in info.member_nodes)
                for action in range(info.num_actions)
            ]
            choices[infoset] = int(np.argmax(totals))
        return choices[infoset]

    return float(node_value(tree.root))


def game_value(tree: GameTree, profile: Profile) -> float:
    """玩家1在 profile 下的期望收益（筹码）"""
    reach = compute_reach(tree, profile)
    terminals = tree.terminal_nodes
    weights = (
        reach.player_reach[0, terminals]
        * reach.player_reach[1, terminals]
        * tree.chance_probability[terminals]
    )
    return float(weights @ tree.terminal_utility[terminals])


def exploitability(tree: GameTree, profile: Profile) -> ExploitabilityReport:
    """
    计算策略组合的可利用度

    Args:
        tree: 博弈树
        profile: 双方完整策略

    Returns:
        ExploitabilityReport
    """
    br1 = best_response_value(tree, profile, 1)
    br2 = best_response_value(tree, profile, 2)
    nash_conv = br1 + br2
    return ExploitabilityReport(
        br_value_p1=br1,
        br_value_p2=br2,
        nash_conv=nash_conv,
        exploitability=nash_conv / 2,
    )


def touch_summary(tree: GameTree, counter: TouchCounter) -> Dict[str, float]:
    """
    汇总每次迭代的节点访问数

    Returns:
        中位数、完整树节点数、√|S|，以及少于完整树的迭代占比
    """
    per_iteration = np.asarray(counter.per_iteration, dtype=float)
    full = len(tree.nodes)
    summary = {
        "iterations": int(per_iteration.size),
        "cumulative": int(counter.cumulative),
        "median": float(np.median(per_iteration)) if per_iteration.size else 0.0,
        "full_tree": full,
        "sqrt_nodes": math.sqrt(full),
        "below_full_share": float(np.mean(per_iteration < full)) if per_iteration.size else 0.0,
    }
    logger.info(
        f"{tree.name}: 每次迭代访问节点中位数 {summary['median']:.0f} / 全树 {full} "
        f"(√|S| = {summary['sqrt_nodes']:.1f})"
    )
    return summary

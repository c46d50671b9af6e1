#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
扩展式博弈核心模块
提供不可变的两人零和博弈树、到达概率计算，
以及 Kuhn 扑克、Leduc 扑克、5-pot Leduc 扑克的构造函数
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from functools import lru_cache
from itertools import permutations
from typing import Callable, Dict, List, Mapping, Optional, Sequence, Tuple, Union

import numpy as np

logger = logging.getLogger(__name__)

# 固定动作顺序：fold < check/call < bet/raise，所有 argmax 的平局处理都依赖这个顺序
KUHN_CARDS = ("J", "Q", "K")
LEDUC_RANKS = ("J", "Q", "K")
LEDUC_SUITS = 2
ACTION_SYMBOLS = {"fold": "f", "check": "k", "call": "c", "bet": "b", "raise": "r"}

Probability = Union[Fraction, float, int]
Profile = Union[np.ndarray, Mapping[int, Sequence[float]]]


class ConfigurationError(ValueError):
    """博弈或运行参数无效"""


class NodeKind(str, Enum):
    DECISION = "decision"
    CHANCE = "chance"
    TERMINAL = "terminal"


@dataclass(frozen=True)
class Node:
    """博弈树节点，终局效用只保存玩家1的一侧"""

    kind: NodeKind
    parent: Optional[int]
    children: Tuple[int, ...] = ()
    player: Optional[int] = None
    infoset: Optional[int] = None
    actions: Tuple[str, ...] = ()
    chance_probs: Tuple[Fraction, ...] = ()
    utility: float = 0.0
    history: str = ""


@dataclass(frozen=True)
class InfoSet:
    id: int
    player: int
    num_actions: int
    member_nodes: Tuple[int, ...]
    action_labels: Tuple[str, ...]
    key: str = ""


@dataclass(frozen=True)
class ReachWeights:
    """
    节点级到达概率

    player_reach[i] 是玩家 i+1 自身动作概率的乘积；
    own_reach / opp_reach 以节点的行动玩家为准（机会节点和终局节点按玩家1计），
    opp_reach 包含机会概率。例如 Kuhn 中玩家1行动一次后轮到玩家2，
    该节点的 opp_reach 是玩家1的动作概率乘 1/6；
    固定某个玩家视角的 π^{-i} 用 reach_excluding(i)
    """

    player_reach: np.ndarray
    chance_reach: np.ndarray
    own_reach: np.ndarray
    opp_reach: np.ndarray

    @classmethod
    def from_player_reach(cls, tree: "GameTree", player_reach: np.ndarray) -> "ReachWeights":
        columns = np.arange(len(tree.nodes))
        acting = tree.node_player_or_first - 1
        own = player_reach[acting, columns]
        opp = player_reach[1 - acting, columns] * tree.chance_probability
        return cls(
            player_reach=player_reach,
            chance_reach=tree.chance_probability,
            own_reach=own,
            opp_reach=opp,
        )

    def reach_excluding(self, player: int) -> np.ndarray:
        """除玩家 player 以外（对手与机会）的节点级到达概率"""
        if player not in (1, 2):
            raise ValueError(f"玩家编号必须是 1 或 2: {player!r}")
        return self.player_reach[2 - player] * self.chance_reach

    def infoset_own_reach(self, tree: "GameTree") -> np.ndarray:
        """信息集级自身到达概率 π^i(I)；完美回忆下各成员节点相同，取最大值"""
        reach = np.zeros(len(tree.infosets))
        decision = tree.decision_nodes
        np.maximum.at(reach, tree.node_infoset[decision], self.own_reach[decision])
        return reach

    def infoset_opp_reach(self, tree: "GameTree") -> np.ndarray:
        """信息集级对手与机会到达概率 π^{-i}(I)"""
        decision = tree.decision_nodes
        return np.bincount(
            tree.node_infoset[decision],
            weights=self.opp_reach[decision],
            minlength=len(tree.infosets),
        )


def _as_fraction(probability: Probability) -> Fraction:
    if isinstance(probability, Fraction):
        return probability
    if isinstance(probability, int):
        return Fraction(probability)
    return Fraction(probability).limit_denominator(10**9)


def _freeze(array: np.ndarray) -> np.ndarray:
    array.flags.writeable = False
    return array


class GameTree:
    """
    不可变扩展式博弈树

    节点按先序编号，父节点编号总小于子节点编号；
    构造时校验结构、信息集一致性与机会概率，并预先计算机会到达的整数权重
    """

    num_players = 2

    def __init__(self, name: str, nodes: Sequence[Node], root: int, infosets: Sequence[InfoSet]):
        self.name = name
        self.nodes: Tuple[Node, ...] = tuple(nodes)
        self.root = root
        self.infosets: Tuple[InfoSet, ...] = tuple(infosets)
        self._validate()

        terminals = [node.utility for node in self.nodes if node.kind is NodeKind.TERMINAL]
        self.utility_range = max((abs(value) for value in terminals), default=0.0)

        # 机会到达概率用分数精确保存，chance_scale 是所有分母的最小公倍数
        self.chance_reach: Tuple[Fraction, ...] = self._compute_chance_reach()
        self.chance_scale: int = math.lcm(*(reach.denominator for reach in self.chance_reach))
        self.chance_probability = _freeze(np.array([float(r) for r in self.chance_reach]))
        self.chance_weight = _freeze(
            np.array([float(r * self.chance_scale) for r in self.chance_reach])
        )

        self.max_actions = max((info.num_actions for info in self.infosets), default=1)
        mask = np.zeros((len(self.infosets), self.max_actions), dtype=bool)
        for info in self.infosets:
            mask[info.id, : info.num_actions] = True
        self.action_mask = _freeze(mask)
        self.infoset_players = _freeze(np.array([info.player for info in self.infosets], dtype=int))
        self.node_infoset = _freeze(
            np.array([-1 if node.infoset is None else node.infoset for node in self.nodes], dtype=int)
        )
        self.node_player_or_first = _freeze(
            np.array([node.player or 1 for node in self.nodes], dtype=int)
        )
        self.decision_nodes = _freeze(
            np.array([i for i, node in enumerate(self.nodes) if node.kind is NodeKind.DECISION], dtype=int)
        )
        self.terminal_nodes = _freeze(
            np.array([i for i, node in enumerate(self.nodes) if node.kind is NodeKind.TERMINAL], dtype=int)
        )
        self.terminal_utility = _freeze(np.array([node.utility for node in self.nodes]))

    def __repr__(self) -> str:
        return (
            f"GameTree(name={self.name!r}, nodes={len(self.nodes)}, "
            f"infosets={len(self.infosets)}, utility_range={self.utility_range})"
        )

    def _validate(self) -> None:
        roots = [i for i, node in enumerate(self.nodes) if node.parent is None]
        if roots != [self.root]:
            raise ConfigurationError(f"博弈树必须恰好有一个根节点，实际: {roots}")

        for index, node in enumerate(self.nodes):
            for child in node.children:
                if not index < child < len(self.nodes):
                    raise ConfigurationError(f"节点 {index} 的子节点编号无效: {child}")
                if self.nodes[child].parent != index:
                    raise ConfigurationError(f"节点 {child} 的父节点与树结构不一致")

            if node.kind is NodeKind.TERMINAL:
                if node.children:
                    raise ConfigurationError(f"终局节点 {index} 不能有子节点")
                continue
            if not node.children:
                raise ConfigurationError(f"非终局节点 {index} 至少需要一个子节点")

            if node.kind is NodeKind.CHANCE:
                if len(node.chance_probs) != len(node.children):
                    raise ConfigurationError(f"机会节点 {index} 的概率数与子节点数不一致")
                if any(p <= 0 for p in node.chance_probs):
                    raise ConfigurationError(f"机会节点 {index} 存在非正概率")
                if abs(float(sum(node.chance_probs)) - 1.0) > 1e-12:
                    raise ConfigurationError(f"机会节点 {index} 的概率之和不为 1")
            else:
                if len(node.actions) != len(node.children):
                    raise ConfigurationError(f"决策节点 {index} 的动作数与子节点数不一致")
                info = self.infosets[node.infoset]
                if info.player != node.player or info.num_actions != len(node.actions):
                    raise ConfigurationError(f"决策节点 {index} 与信息集 {info.id} 不一致")

        for expected_id, info in enumerate(self.infosets):
            if info.id != expected_id:
                raise ConfigurationError(f"信息集编号必须连续，位置 {expected_id} 为 {info.id}")
            if info.player not in (1, 2):
                raise ConfigurationError(f"信息集 {info.id} 的玩家必须是 1 或 2")
            for member in info.member_nodes:
                if self.nodes[member].infoset != info.id:
                    raise ConfigurationError(f"信息集 {info.id} 的成员节点 {member} 不属于该信息集")

    def _compute_chance_reach(self) -> Tuple[Fraction, ...]:
        reach = [Fraction(0)] * len(self.nodes)
        reach[self.root] = Fraction(1)
        for index, node in enumerate(self.nodes):
            if node.kind is NodeKind.CHANCE:
                for child, probability in zip(node.children, node.chance_probs):
                    reach[child] = reach[index] * probability
            else:
                for child in node.children:
                    reach[child] = reach[index]
        return tuple(reach)

    def uniform_profile(self) -> np.ndarray:
        """所有信息集均匀分布的策略"""
        counts = self.action_mask.sum(axis=1, keepdims=True)
        return np.where(self.action_mask, 1.0 / counts, 0.0)

    def pure_profile(self, actions: Sequence[int]) -> np.ndarray:
        """每个信息集选一个动作的纯策略"""
        profile = np.zeros(self.action_mask.shape)
        profile[np.arange(len(self.infosets)), np.asarray(actions, dtype=int)] = 1.0
        return profile

    def infoset_by_key(self, player: int, key: str) -> InfoSet:
        for info in self.infosets:
            if info.player == player and info.key == key:
                return info
        raise KeyError(f"找不到玩家 {player} 的信息集 {key!r}")


class GameTreeBuilder:
    """按先序逐个添加节点来构造 GameTree，信息集由键名自动分配编号"""

    def __init__(self, name: str):
        self.name = name
        self._records: List[dict] = []
        self._infoset_ids: Dict[Tuple[int, str], int] = {}
        self._infoset_entries: List[dict] = []

    def _add(self, parent: Optional[int], probability: Optional[Probability], **fields) -> int:
        index = len(self._records)
        if parent is None:
            if self._records:
                raise ConfigurationError("博弈树只能有一个根节点")
        else:
            record = self._records[parent]
            if record["kind"] is NodeKind.TERMINAL:
                raise ConfigurationError(f"不能在终局节点 {parent} 下添加子节点")
            if record["kind"] is NodeKind.CHANCE:
                if probability is None:
                    raise ConfigurationError(f"机会节点 {parent} 的子节点需要给出概率")
                record["chance_probs"].append(_as_fraction(probability))
            record["children"].append(index)
        self._records.append(dict(parent=parent, children=[], chance_probs=[], **fields))
        return index

    def chance(self, parent: Optional[int] = None, *, probability: Optional[Probability] = None,
               history: str = "") -> int:
        return self._add(parent, probability, kind=NodeKind.CHANCE, history=history)

    def decision(self, player: int, infoset_key: str, actions: Sequence[str],
                 parent: Optional[int] = None, *, probability: Optional[Probability] = None,
                 history: str = "") -> int:
        key = (player, infoset_key)
        if key not in self._infoset_ids:
            self._infoset_ids[key] = len(self._infoset_entries)
            self._infoset_entries.append(
                {"player": player, "actions": tuple(actions), "members": [], "key": infoset_key}
            )
        infoset = self._infoset_ids[key]
        entry = self._infoset_entries[infoset]
        if entry["actions"] != tuple(actions):
            raise ConfigurationError(f"信息集 {infoset_key!r} 的动作集合不一致")
        index = self._add(
            parent, probability, kind=NodeKind.DECISION, player=player,
            infoset=infoset, actions=tuple(actions), history=history,
        )
        entry["members"].append(index)
        return index

    def terminal(self, utility: float, parent: Optional[int] = None, *,
                 probability: Optional[Probability] = None, history: str = "") -> int:
        return self._add(parent, probability, kind=NodeKind.TERMINAL, utility=float(utility), history=history)

    def build(self) -> GameTree:
        nodes = [
            Node(
                kind=record["kind"],
                parent=record["parent"],
                children=tuple(record["children"]),
                player=record.get("player"),
                infoset=record.get("infoset"),
                actions=record.get("actions", ()),
                chance_probs=tuple(record["chance_probs"]),
                utility=record.get("utility", 0.0),
                history=record.get("history", ""),
            )
            for record in self._records
        ]
        infosets = [
            InfoSet(
                id=i,
                player=entry["player"],
                num_actions=len(entry["actions"]),
                member_nodes=tuple(entry["members"]),
                action_labels=entry["actions"],
                key=entry["key"],
            )
            for i, entry in enumerate(self._infoset_entries)
        ]
        tree = GameTree(self.name, nodes, 0, infosets)
        logger.debug(f"构建完成: {tree}")
        return tree


def build_kuhn() -> GameTree:
    """
    构建 Kuhn 扑克

    三张牌 J/Q/K 无放回发给两名玩家（6 种有序发牌，各 1/6），各下底注 1，
    玩家1 先行动 check/bet(1)，面对下注时 fold/call

    Returns:
        Kuhn 扑克博弈树
    """
    builder = GameTreeBuilder("kuhn")
    root = builder.chance(history="")
    deals = list(permutations(range(len(KUHN_CARDS)), 2))

    for c1, c2 in deals:
        card1, card2 = KUHN_CARDS[c1], KUHN_CARDS[c2]
        deal = f"{card1}{card2}"

        def showdown(stake: int) -> int:
            return stake if c1 > c2 else -stake

        first = builder.decision(1, f"{card1}:", ("check", "bet"), root,
                                 probability=Fraction(1, len(deals)), history=deal)

        # check
        second = builder.decision(2, f"{card2}:k", ("check", "bet"), first, history=f"{deal}:k")
        builder.terminal(showdown(1), second, history=f"{deal}:kk")
        facing = builder.decision(1, f"{card1}:kb", ("fold", "call"), second, history=f"{deal}:kb")
        builder.terminal(-1, facing, history=f"{deal}:kbf")
        builder.terminal(showdown(2), facing, history=f"{deal}:kbc")

        # bet
        answer = builder.decision(2, f"{card2}:b", ("fold", "call"), first, history=f"{deal}:b")
        builder.terminal(1, answer, history=f"{deal}:bf")
        builder.terminal(showdown(2), answer, history=f"{deal}:bc")

    return builder.build()


@dataclass(frozen=True)
class _BettingState:
    round: int
    contributions: Tuple[int, int]
    to_act: int
    raises: int
    facing_bet: bool
    checked: bool
    history: str


@dataclass(frozen=True)
class _LeducDeal:
    label: str
    ranks: Tuple[int, int]
    remaining: Tuple[int, ...]
    public: Optional[int] = None


class _LeducBuilder:
    """Leduc 单局的下注树展开"""

    def __init__(self, builder: GameTreeBuilder, deck: Sequence[Tuple[int, int]],
                 bet_sizes: Sequence[int], max_raises: int):
        self.builder = builder
        self.deck = deck
        self.bet_sizes = tuple(bet_sizes)
        self.max_raises = max_raises

    def _infoset_key(self, deal: _LeducDeal, player: int, history: str) -> str:
        private = LEDUC_RANKS[deal.ranks[player - 1]]
        public = "" if deal.public is None else LEDUC_RANKS[deal.public]
        return f"{private}{public}:{history}"

    def _node_history(self, deal: _LeducDeal, history: str) -> str:
        return f"{deal.label}:{history}"

    def _showdown(self, deal: _LeducDeal, stake: int) -> int:
        r1, r2 = deal.ranks
        pair1, pair2 = r1 == deal.public, r2 == deal.public
        if pair1 != pair2:
            return stake if pair1 else -stake
        if r1 == r2:
            return 0
        return stake if r1 > r2 else -stake

    def betting(self, deal: _LeducDeal, state: _BettingState, parent: int,
                probability: Optional[Probability] = None) -> int:
        player = state.to_act
        if state.facing_bet:
            actions = ["fold", "call"]
        else:
            actions = ["check"]
        if state.raises < self.max_raises:
            actions.append("raise" if state.facing_bet else "bet")

        node = self.builder.decision(
            player,
            self._infoset_key(deal, player, state.history),
            tuple(actions),
            parent,
            probability=probability,
            history=self._node_history(deal, state.history),
        )
        other = 3 - player
        for action in actions:
            history = state.history + ACTION_SYMBOLS[action]
            if action == "fold":
                folded = state.contributions[player - 1]
                utility = -folded if player == 1 else folded
                self.builder.terminal(utility, node, history=self._node_history(deal, history))
            elif action == "check" and not state.checked:
                self.betting(deal, _BettingState(
                    state.round, state.contributions, other, state.raises, False, True, history,
                ), node)
            elif action in ("check", "call"):
                level = max(state.contributions)
                self.close_round(deal, state.round, (level, level), history, node)
            else:
                contributions = list(state.contributions)
                contributions[player - 1] = max(contributions) + self.bet_sizes[state.round]
                self.betting(deal, _BettingState(
                    state.round, tuple(contributions), other, state.raises + 1, True, False, history,
                ), node)
        return node

    def close_round(self, deal: _LeducDeal, round_index: int, contributions: Tuple[int, int],
                    history: str, parent: int) -> None:
        if round_index == 1:
            self.builder.terminal(
                self._showdown(deal, contributions[0]),
                parent,
                history=self._node_history(deal, history),
            )
            return

        chance = self.builder.chance(parent, history=self._node_history(deal, history))
        history = history + "/"
        for card in deal.remaining:
            public = self.deck[card][0]
            dealt = _LeducDeal(
                label=f"{deal.label}|{LEDUC_RANKS[public]}{self.deck[card][1]}",
                ranks=deal.ranks,
                remaining=deal.remaining,
                public=public,
            )
            self.betting(
                dealt,
                _BettingState(1, contributions, 1, 0, False, False, history),
                chance,
                probability=Fraction(1, len(deal.remaining)),
            )


def build_leduc(ante: int = 1, bet_sizes: Sequence[int] = (2, 4), max_raises: int = 2,
                name: Optional[str] = None) -> GameTree:
    """
    构建 Leduc 扑克

    6 张牌（J/Q/K 各两种花色），两轮下注，中间翻开一张公共牌；
    每轮下注额为 bet_sizes[round]，每轮最多 max_raises 次 bet/raise；
    对子大于高牌，同点平分

    Args:
        ante: 每名玩家的底注
        bet_sizes: 两轮各自的下注额
        max_raises: 每轮 bet 与 raise 的总次数上限

    Returns:
        Leduc 扑克博弈树
    """
    bet_sizes = tuple(bet_sizes)
    if not isinstance(ante, int) or ante < 1:
        raise ConfigurationError(f"ante 必须是不小于 1 的整数: {ante!r}")
    if len(bet_sizes) != 2 or any(not isinstance(b, int) or b < 1 for b in bet_sizes):
        raise ConfigurationError(f"bet_sizes 必须是两个正整数: {bet_sizes!r}")
    if not isinstance(max_raises, int) or max_raises < 1:
        raise ConfigurationError(f"max_raises 必须是不小于 1 的整数: {max_raises!r}")

    deck = [(rank, suit) for rank in range(len(LEDUC_RANKS)) for suit in range(LEDUC_SUITS)]
    builder = GameTreeBuilder(name or ("leduc" if ante == 1 else f"leduc-ante{ante}"))
    expander = _LeducBuilder(builder, deck, bet_sizes, max_raises)
    root = builder.chance(history="")
    deals = list(permutations(range(len(deck)), 2))

    for i, j in deals:
        deal = _LeducDeal(
            label=f"{LEDUC_RANKS[deck[i][0]]}{deck[i][1]}{LEDUC_RANKS[deck[j][0]]}{deck[j][1]}",
            ranks=(deck[i][0], deck[j][0]),
            remaining=tuple(k for k in range(len(deck)) if k not in (i, j)),
        )
        expander.betting(
            deal,
            _BettingState(0, (ante, ante), 1, 0, False, False, ""),
            root,
            probability=Fraction(1, len(deals)),
        )

    return builder.build()


def build_matrix_tree(payoff: Sequence[Sequence[float]], name: str = "matrix") -> GameTree:
    """
    把矩阵博弈展开成一次性博弈树，玩家2看不到玩家1的选择

    Args:
        payoff: 玩家1的收益矩阵

    Returns:
        两层博弈树
    """
    payoff = np.asarray(payoff, dtype=float)
    if payoff.ndim != 2 or min(payoff.shape) < 1:
        raise ConfigurationError(f"收益矩阵形状无效: {payoff.shape}")
    rows, cols = payoff.shape
    builder = GameTreeBuilder(name)
    root = builder.decision(1, "row", tuple(f"r{i}" for i in range(rows)))
    for i in range(rows):
        column = builder.decision(2, "col", tuple(f"c{j}" for j in range(cols)), root, history=f"r{i}")
        for j in range(cols):
            builder.terminal(payoff[i, j], column, history=f"r{i}c{j}")
    return builder.build()


GAMES: Dict[str, Callable[[], GameTree]] = {
    "kuhn": build_kuhn,
    "leduc": lambda: build_leduc(1, (2, 4), 2, name="leduc"),
    # 5-pot Leduc 按每人底注 5、下注额不变理解
    "leduc5": lambda: build_leduc(5, (2, 4), 2, name="leduc5"),
}


@lru_cache(maxsize=None)
def load_game(game_id: str) -> GameTree:
    """按编号构建（并缓存）博弈树"""
    if game_id not in GAMES:
        raise ConfigurationError(f"未知博弈: {game_id}，可选: {', '.join(GAMES)}")
    tree = GAMES[game_id]()
    logger.info(f"已构建博弈 {game_id}: {len(tree.nodes)} 个节点, {len(tree.infosets)} 个信息集")
    return tree


def validate_profile(tree: GameTree, profile: Profile, atol: float = 1e-9) -> np.ndarray:
    """
    检查策略是否覆盖全部信息集且每行都是概率分布

    Args:
        tree: 博弈树
        profile: (信息集数, 最大动作数) 的数组，或 {信息集编号: 概率} 映射

    Returns:
        规范化为数组的策略
    """
    if isinstance(profile, Mapping):
        array = np.zeros(tree.action_mask.shape)
        for info in tree.infosets:
            if info.id not in profile:
                raise ValueError(f"策略缺少信息集 {info.id} ({info.key})")
            row = np.asarray(profile[info.id], dtype=float)
            if row.shape != (info.num_actions,):
                raise ValueError(f"信息集 {info.id} 的动作数应为 {info.num_actions}")
            array[info.id, : info.num_actions] = row
        profile = array

    array = np.asarray(profile, dtype=float)
    if array.ndim != 2 or array.shape[0] != len(tree.infosets):
        raise ValueError(f"策略缺少信息集: 需要 {len(tree.infosets)} 行，实际形状 {array.shape}")
    if array.shape[1] != tree.max_actions:
        raise ValueError(f"策略列数应为 {tree.max_actions}，实际 {array.shape[1]}")
    if np.any(array[~tree.action_mask] != 0.0):
        raise ValueError("策略在无效动作上有概率")
    if np.any(array < 0.0) or not np.all(np.isfinite(array)):
        raise ValueError("策略包含负数或非有限值")
    bad = np.flatnonzero(np.abs(array.sum(axis=1) - 1.0) > atol)
    if bad.size:
        raise ValueError(f"信息集 {int(bad[0])} 的策略之和不为 1")
    return array


def compute_reach(tree: GameTree, profile: Profile) -> ReachWeights:
    """
    自顶向下计算每个节点的到达概率

    Args:
        tree: 博弈树
        profile: 完整策略

    Returns:
        ReachWeights
    """
    probs = validate_profile(tree, profile).tolist()
    count = len(tree.nodes)
    reach1 = [0.0] * count
    reach2 = [0.0] * count
    reach1[tree.root] = reach2[tree.root] = 1.0

    for index, node in enumerate(tree.nodes):
        if node.kind is NodeKind.DECISION:
            row = probs[node.infoset]
            for action, child in enumerate(node.children):
                if node.player == 1:
                    reach1[child] = reach1[index] * row[action]
                    reach2[child] = reach2[index]
                else:
                    reach1[child] = reach1[index]
                    reach2[child] = reach2[index] * row[action]
        else:
            for child in node.children:
                reach1[child] = reach1[index]
                reach2[child] = reach2[index]

    return ReachWeights.from_player_reach(tree, np.array([reach1, reach2]))


def enumerate_infosets(tree: GameTree, player: int) -> List[InfoSet]:
    """按编号顺序返回某玩家的全部信息集"""
    return sorted((info for info in tree.infosets if info.player == player), key=lambda info: info.id)


def dump_tree(tree: GameTree) -> str:
    """逐行输出节点编号、类型、信息集编号和子节点，用于对照测试"""
    lines = []
    for index, node in enumerate(tree.nodes):
        infoset = "-" if node.infoset is None else str(node.infoset)
        children = ",".join(str(child) for child in node.children) or "-"
        lines.append(f"{index}\t{node.kind.value}\t{infoset}\t{children}")
    return "\n".join(lines) + "\n"

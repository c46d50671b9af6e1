# -*- coding: utf-8 -*-
"""博弈树构造与到达概率测试"""

from fractions import Fraction

import numpy as np
import pytest

from conftest import RPS
from game_core import (
    ConfigurationError,
    GameTreeBuilder,
    NodeKind,
    build_leduc,
    build_matrix_tree,
    compute_reach,
    dump_tree,
    enumerate_infosets,
    load_game,
    validate_profile,
)


class TestKuhn:
    def test_size(self, kuhn):
        assert len(kuhn.nodes) == 55
        assert len(kuhn.infosets) == 12
        assert kuhn.utility_range == 2
        assert kuhn.chance_scale == 6

    def test_deals_are_uniform(self, kuhn):
        root = kuhn.nodes[kuhn.root]
        assert root.kind is NodeKind.CHANCE
        assert root.chance_probs == (Fraction(1, 6),) * 6

    def test_infosets_have_two_actions_and_one_player(self, kuhn):
        for info in kuhn.infosets:
            assert info.num_actions == 2
            assert {kuhn.nodes[m].player for m in info.member_nodes} == {info.player}
            assert len(info.member_nodes) == 2

    def test_bet_fold_pays_the_ante(self, kuhn):
        terminals = {node.history: node.utility for node in kuhn.nodes if node.kind is NodeKind.TERMINAL}
        assert terminals["JQ:bf"] == 1
        assert terminals["KJ:kbf"] == -1
        assert terminals["KJ:bc"] == 2
        assert terminals["JK:kk"] == -1

    def test_infoset_lookup(self, kuhn):
        info = kuhn.infoset_by_key(2, "Q:b")
        assert info.player == 2
        assert info.action_labels == ("fold", "call")
        with pytest.raises(KeyError):
            kuhn.infoset_by_key(1, "Q:b")


class TestLeduc:
    def test_size(self, leduc):
        assert len(leduc.nodes) == 9451
        assert len(leduc.infosets) == 288
        assert leduc.chance_scale == 120
        assert leduc.utility_range == 13

    def test_five_pot_variant(self):
        tree = load_game("leduc5")
        assert tree.utility_range == 17
        assert len(tree.nodes) == 9451

    def test_round_two_keys_include_public_card(self, leduc):
        assert leduc.infoset_by_key(1, "J:").num_actions == 2
        first = leduc.infoset_by_key(1, "JQ:kk/")
        assert first.action_labels == ("check", "bet")
        facing = leduc.infoset_by_key(2, "KK:bc/kbr")
        assert facing.action_labels == ("fold", "call")

    def test_raise_cap_per_round(self, leduc):
        # 每轮最多 bet + raise 两次
        assert leduc.infoset_by_key(2, "Q:b").action_labels == ("fold", "call", "raise")
        assert leduc.infoset_by_key(1, "Q:br").action_labels == ("fold", "call")

    @pytest.mark.parametrize("betting, expected", [
        ("bf", 1),
        ("kbf", -1),
        ("brf", -3),
        ("kbrf", 3),
        ("bc/bf", 3),
        ("bc/kbrf", 7),
        ("kk/brf", -5),
    ])
    def test_fold_pays_folder_contribution(self, leduc, betting, expected):
        terminals = [node for node in leduc.nodes
                     if node.kind is NodeKind.TERMINAL and node.history.split(":")[-1] == betting]
        assert terminals
        assert {node.utility for node in terminals} == {expected}

    def test_five_pot_fold_payoffs(self):
        tree = load_game("leduc5")
        for betting, expected in (("bf", 5), ("brf", -7), ("kk/bf", 5)):
            utilities = {node.utility for node in tree.nodes
                         if node.kind is NodeKind.TERMINAL and node.history.split(":")[-1] == betting}
            assert utilities == {expected}

    def test_chance_probabilities_sum_to_one(self, leduc):
        for node in leduc.nodes:
            if node.kind is NodeKind.CHANCE:
                assert sum(node.chance_probs) == 1

    def test_invalid_parameters(self):
        with pytest.raises(ConfigurationError):
            build_leduc(ante=0)
        with pytest.raises(ConfigurationError):
            build_leduc(bet_sizes=(2,))
        with pytest.raises(ConfigurationError):
            build_leduc(max_raises=0)


class TestBuilder:
    def test_chance_child_needs_probability(self):
        builder = GameTreeBuilder("bad")
        root = builder.chance()
        with pytest.raises(ConfigurationError):
            builder.terminal(1, root)

    def test_probabilities_must_sum_to_one(self):
        builder = GameTreeBuilder("bad")
        root = builder.chance()
        builder.terminal(1, root, probability=Fraction(1, 2))
        builder.terminal(-1, root, probability=Fraction(1, 3))
        with pytest.raises(ConfigurationError):
            builder.build()

    def test_infoset_action_sets_must_match(self):
        builder = GameTreeBuilder("bad")
        root = builder.chance()
        builder.decision(1, "x", ("a", "b"), root, probability=Fraction(1, 2))
        with pytest.raises(ConfigurationError):
            builder.decision(1, "x", ("a",), root, probability=Fraction(1, 2))

    def test_single_root(self):
        builder = GameTreeBuilder("bad")
        builder.chance()
        with pytest.raises(ConfigurationError):
            builder.chance()

    def test_matrix_tree_hides_row(self, rps_tree):
        assert len(rps_tree.infosets) == 2
        column = rps_tree.infoset_by_key(2, "col")
        assert len(column.member_nodes) == 3
        assert rps_tree.utility_range == 1

    def test_matrix_tree_rejects_bad_shape(self):
        with pytest.raises(ConfigurationError):
            build_matrix_tree([1, 2, 3])


class TestReach:
    def test_root_reach_is_one(self, kuhn):
        reach = compute_reach(kuhn, kuhn.uniform_profile())
        assert reach.own_reach[kuhn.root] == 1.0
        assert reach.player_reach[:, kuhn.root].tolist() == [1.0, 1.0]

    def test_pure_profile_reach_is_binary(self, leduc):
        rng = np.random.default_rng(3)
        profile = leduc.pure_profile([rng.integers(info.num_actions) for info in leduc.infosets])
        reach = compute_reach(leduc, profile)
        assert set(np.unique(reach.own_reach)) <= {0.0, 1.0}
        assert np.all((reach.opp_reach >= 0) & (reach.opp_reach <= 1))

    def test_infoset_reach(self, kuhn):
        reach = compute_reach(kuhn, kuhn.uniform_profile())
        own = reach.infoset_own_reach(kuhn)
        opp = reach.infoset_opp_reach(kuhn)
        assert own[kuhn.infoset_by_key(1, "J:").id] == 1.0
        assert own[kuhn.infoset_by_key(1, "J:kb").id] == pytest.approx(0.5)
        # 两种发牌各 1/6，对手在 J:kb 之前下注的概率 1/2
        assert opp[kuhn.infoset_by_key(1, "J:kb").id] == pytest.approx(2 * (1 / 6) * 0.5)

    def test_reach_after_one_player_one_action(self, kuhn):
        reach = compute_reach(kuhn, kuhn.uniform_profile())
        after_first = [index for index, node in enumerate(kuhn.nodes)
                       if node.history.split(":")[-1] in ("k", "b")]
        assert len(after_first) == 12
        for index in after_first:
            # 玩家1视角：只有发牌的 1/6
            assert reach.player_reach[1, index] * kuhn.chance_probability[index] == pytest.approx(1 / 6)
            assert reach.reach_excluding(1)[index] == pytest.approx(1 / 6)
            # 该节点由玩家2行动，opp_reach 还包含玩家1的 1/2
            assert reach.opp_reach[index] == pytest.approx(1 / 12)
            assert reach.reach_excluding(2)[index] == pytest.approx(1 / 12)

    def test_reach_excluding_rejects_unknown_player(self, kuhn):
        reach = compute_reach(kuhn, kuhn.uniform_profile())
        with pytest.raises(ValueError):
            reach.reach_excluding(3)

    def test_missing_infoset_is_rejected(self, kuhn):
        partial = {info.id: [0.5, 0.5] for info in kuhn.infosets[1:]}
        with pytest.raises(ValueError, match="0"):
            validate_profile(kuhn, partial)

    def test_rows_must_be_distributions(self, kuhn):
        profile = kuhn.uniform_profile()
        profile[0] = [0.7, 0.7]
        with pytest.raises(ValueError):
            validate_profile(kuhn, profile)


class TestHelpers:
    def test_enumerate_infosets(self, kuhn):
        first = enumerate_infosets(kuhn, 1)
        assert len(first) == 6
        assert [info.id for info in first] == sorted(info.id for info in first)

    def test_dump_tree(self, kuhn):
        lines = dump_tree(kuhn).splitlines()
        assert len(lines) == len(kuhn.nodes)
        assert lines[0].startswith("0\tchance\t-\t")

    def test_unknown_game(self):
        with pytest.raises(ConfigurationError, match="kuhn"):
            load_game("holdem")

    def test_rps_matrix_tree_is_zero_sum_by_construction(self, rps_tree):
        utilities = sorted(node.utility for node in rps_tree.nodes if node.kind is NodeKind.TERMINAL)
        assert utilities == sorted(value for row in RPS for value in row)

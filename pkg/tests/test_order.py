""" Unit tests to cover the order module."""
import unittest

import numpy as np

from relrisk import order
from relrisk.errors import (CycleError, GroundMismatch, InvalidPartition,
                            InvalidRelation, QuotientCycleError, UnknownElement)
from relrisk.order import Comparison, GroundSet, Partition, StrictRelation


def chain(*elements):
    ground = GroundSet(elements)
    pairs = frozenset(zip(elements, elements[1:]))
    return order.validate_order(StrictRelation(ground, pairs))


def poset_from(elements, pairs):
    return order.validate_order(StrictRelation(GroundSet(elements), frozenset(pairs)))


class GroundSetTests(unittest.TestCase):

    def test_ground_set_rejects_duplicate_identifiers(self):
        self.assertRaises(InvalidRelation, GroundSet, ('a', 'b', 'a'))

    def test_ground_set_index_raises_UnknownElement(self):
        ground = GroundSet(('a', 'b'))
        with self.assertRaises(UnknownElement) as caught:
            ground.index('z')
        self.assertEqual('z', caught.exception.element)

    def test_ground_set_ordered_follows_declaration_order(self):
        ground = GroundSet(('c', 'a', 'b'))
        self.assertEqual(('c', 'b'), ground.ordered(['b', 'c', 'b']))

    def test_strict_relation_rejects_reflexive_pair(self):
        ground = GroundSet(('a', 'b'))
        self.assertRaises(InvalidRelation, StrictRelation, ground, frozenset({('a', 'a')}))

    def test_strict_relation_from_pairs_drops_reflexive_pair(self):
        ground = GroundSet(('a', 'b'))
        rel = StrictRelation.from_pairs(ground, [('a', 'a'), ('a', 'b')])
        self.assertEqual((('a', 'b'),), rel.sorted_pairs())

    def test_strict_relation_rejects_unknown_element(self):
        ground = GroundSet(('a', 'b'))
        self.assertRaises(UnknownElement, StrictRelation, ground, frozenset({('a', 'x')}))


class ValidateOrderTests(unittest.TestCase):

    def test_validate_order_chain_closure(self):
        poset = chain('a', 'b', 'c')
        expected = {('a', 'b'), ('b', 'c'), ('a', 'c')}
        self.assertEqual(expected, set(poset.closure.pairs))
        self.assertEqual((('a', 'b'), ('b', 'c')), poset.covers.sorted_pairs())

    def test_validate_order_raises_CycleError_with_witness(self):
        rel = StrictRelation(GroundSet(('a', 'b', 'c')),
                             frozenset({('a', 'b'), ('b', 'c'), ('c', 'a')}))
        with self.assertRaises(CycleError) as caught:
            order.validate_order(rel)
        self.assertEqual({'a', 'b', 'c'}, set(caught.exception.cycle))

    def test_validate_order_two_cycle_witness(self):
        rel = StrictRelation(GroundSet(('a', 'b')), frozenset({('a', 'b'), ('b', 'a')}))
        with self.assertRaises(CycleError) as caught:
            order.validate_order(rel)
        self.assertEqual(2, len(caught.exception.cycle))

    def test_validate_order_empty_relation_is_antichain(self):
        poset = poset_from(('a', 'b', 'c'), [])
        self.assertEqual(0, len(poset.closure))
        self.assertTrue(np.array_equal(np.eye(3, dtype=bool), poset.leq))

    def test_poset_leq_matrix_is_read_only(self):
        poset = chain('a', 'b')
        with self.assertRaises(ValueError):
            poset.leq[0, 1] = False

    def test_hasse_drops_transitive_pairs(self):
        poset = poset_from(('a', 'b', 'c'), [('a', 'b'), ('b', 'c'), ('a', 'c')])
        self.assertEqual((('a', 'b'), ('b', 'c')), order.hasse(poset).sorted_pairs())

    def test_up_and_down_are_strict(self):
        poset = chain('a', 'b', 'c')
        self.assertEqual(('b', 'c'), poset.up('a'))
        self.assertEqual((), poset.down('a'))
        self.assertEqual(('a', 'b'), poset.down('c'))


class JoinMeetTests(unittest.TestCase):

    def setUp(self):
        # Diamond: bottom < left, right < top
        self.diamond = poset_from(('bottom', 'left', 'right', 'top'),
                                  [('bottom', 'left'), ('bottom', 'right'),
                                   ('left', 'top'), ('right', 'top')])
        # Two incomparable minimal upper bounds for a and b.
        self.bowtie = poset_from(('a', 'b', 'c', 'd'),
                                 [('a', 'c'), ('a', 'd'), ('b', 'c'), ('b', 'd')])

    def test_join_of_incomparable_pair_in_diamond(self):
        self.assertEqual('top', order.join(self.diamond, 'left', 'right'))

    def test_meet_of_incomparable_pair_in_diamond(self):
        self.assertEqual('bottom', order.meet(self.diamond, 'left', 'right'))

    def test_join_of_comparable_pair_is_larger_element(self):
        self.assertEqual('top', order.join(self.diamond, 'bottom', 'top'))

    def test_join_is_idempotent(self):
        self.assertEqual('left', order.join(self.diamond, 'left', 'left'))

    def test_join_none_with_two_minimal_upper_bounds(self):
        self.assertIsNone(order.join(self.bowtie, 'a', 'b'))

    def test_join_none_without_upper_bound(self):
        poset = poset_from(('a', 'b'), [])
        self.assertIsNone(order.join(poset, 'a', 'b'))

    def test_sup_set_and_inf_set(self):
        self.assertEqual('top', order.sup_set(self.diamond, ['bottom', 'left', 'right']))
        self.assertEqual('bottom', order.inf_set(self.diamond, ['left', 'right', 'top']))

    def test_sup_set_of_empty_subset_is_none(self):
        self.assertIsNone(order.sup_set(self.diamond, []))
        self.assertIsNone(order.inf_set(self.diamond, []))

    def test_join_raises_UnknownElement(self):
        self.assertRaises(UnknownElement, order.join, self.diamond, 'left', 'nope')

    def test_compare_verdicts(self):
        self.assertIs(Comparison.LEQ, order.compare(self.diamond, 'bottom', 'top'))
        self.assertIs(Comparison.GEQ, order.compare(self.diamond, 'top', 'left'))
        self.assertIs(Comparison.EQ, order.compare(self.diamond, 'left', 'left'))
        self.assertIs(Comparison.INCOMPARABLE,
                      order.compare(self.diamond, 'left', 'right'))


class StructureProfileTests(unittest.TestCase):

    def test_structure_profile_diamond_is_lattice(self):
        poset = poset_from(('b', 'l', 'r', 't'),
                           [('b', 'l'), ('b', 'r'), ('l', 't'), ('r', 't')])
        profile = order.structure_profile(poset)
        self.assertTrue(profile.is_upper_semilattice)
        self.assertTrue(profile.is_lower_semilattice)
        self.assertFalse(profile.is_total_order)
        self.assertEqual('t', profile.greatest)
        self.assertEqual('b', profile.least)

    def test_structure_profile_chain_is_total(self):
        profile = order.structure_profile(chain('x', 'y', 'z'))
        self.assertTrue(profile.is_total_order)
        self.assertEqual(('z',), profile.maximal_set)

    def test_structure_profile_v_shape(self):
        poset = poset_from(('12', '22', '32'), [('12', '22'), ('32', '22')])
        profile = order.structure_profile(poset)
        self.assertTrue(profile.is_upper_semilattice)
        self.assertFalse(profile.is_lower_semilattice)
        self.assertEqual('22', profile.greatest)
        self.assertIsNone(profile.least)
        self.assertEqual(('12', '32'), profile.minimal_set)

    def test_structure_profile_empty_poset_vacuous(self):
        profile = order.structure_profile(poset_from((), []))
        self.assertTrue(profile.is_upper_semilattice)
        self.assertTrue(profile.is_lower_semilattice)
        self.assertTrue(profile.is_total_order)
        self.assertIsNone(profile.greatest)
        self.assertEqual((), profile.maximal_set)

    def test_structure_profile_singleton(self):
        profile = order.structure_profile(poset_from(('only',), []))
        self.assertTrue(profile.is_total_order)
        self.assertEqual('only', profile.greatest)
        self.assertEqual('only', profile.least)

    def test_extremes_antichain(self):
        found = order.extremes(poset_from(('a', 'b', 'c'), []))
        self.assertIsNone(found.greatest)
        self.assertEqual(('a', 'b', 'c'), found.maximal_set)
        self.assertEqual(('a', 'b', 'c'), found.minimal_set)


class SubposetRelabelTests(unittest.TestCase):

    def test_subposet_inherits_transitive_pairs(self):
        poset = chain('a', 'b', 'c')
        sub = order.subposet(poset, ['c', 'a'])
        self.assertEqual(('a', 'c'), sub.elements)
        self.assertEqual((('a', 'c'),), sub.covers.sorted_pairs())

    def test_subposet_collapses_duplicates(self):
        sub = order.subposet(chain('a', 'b'), ['b', 'b'])
        self.assertEqual(('b',), sub.elements)

    def test_relabel_preserves_order(self):
        poset = chain('a', 'b', 'c')
        renamed = order.relabel(poset, {'a': 'x', 'b': 'y', 'c': 'z'})
        self.assertTrue(renamed.less('x', 'z'))
        self.assertEqual((('x', 'y'), ('y', 'z')), renamed.covers.sorted_pairs())

    def test_relabel_rejects_non_injective_mapping(self):
        poset = chain('a', 'b')
        self.assertRaises(InvalidRelation, order.relabel, poset, {'a': 'x', 'b': 'x'})

    def test_relabel_rejects_missing_element(self):
        poset = chain('a', 'b')
        self.assertRaises(UnknownElement, order.relabel, poset, {'a': 'x'})


class PartitionQuotientTests(unittest.TestCase):

    def setUp(self):
        self.ground = GroundSet(('w1', 'w2', 'w3', 'w4'))

    def test_partition_rejects_overlap(self):
        self.assertRaises(InvalidPartition, Partition, self.ground,
                          (('w1', 'w2'), ('w2', 'w3'), ('w4',)))

    def test_partition_rejects_uncovered_element(self):
        self.assertRaises(InvalidPartition, Partition, self.ground,
                          (('w1', 'w2'), ('w3',)))

    def test_partition_rejects_empty_block(self):
        self.assertRaises(InvalidPartition, Partition, self.ground,
                          (('w1', 'w2', 'w3', 'w4'), ()))

    def test_partition_block_names_and_lookup(self):
        partition = Partition(self.ground, (('w1', 'w3'), ('w2', 'w4')))
        self.assertEqual(('{w1, w3}', '{w2, w4}'), partition.names())
        self.assertEqual(('w2', 'w4'), partition.block_of('w4'))

    def test_quotient_two_chains_gives_total_order(self):
        poset = poset_from(self.ground.elements, [('w2', 'w1'), ('w4', 'w3')])
        partition = Partition(self.ground, (('w1', 'w3'), ('w2', 'w4')))
        factor = order.quotient(poset, partition)
        self.assertEqual((('{w2, w4}', '{w1, w3}'),), factor.covers.sorted_pairs())
        self.assertTrue(order.structure_profile(factor).is_total_order)

    def test_quotient_identity_partition_is_isomorphic(self):
        poset = poset_from(self.ground.elements, [('w2', 'w1'), ('w3', 'w1')])
        factor = order.quotient(poset, Partition.identity(self.ground))
        self.assertEqual(len(poset.closure), len(factor.closure))
        self.assertTrue(factor.less('{w2}', '{w1}'))

    def test_quotient_raises_QuotientCycleError(self):
        poset = chain('a', 'b', 'c')
        partition = Partition(poset.ground, (('a', 'c'), ('b',)))
        with self.assertRaises(QuotientCycleError) as caught:
            order.quotient(poset, partition)
        self.assertEqual({'{a, c}', '{b}'}, set(caught.exception.blocks))

    def test_quotient_QuotientCycleError_is_a_CycleError(self):
        self.assertTrue(issubclass(QuotientCycleError, CycleError))

    def test_quotient_raises_GroundMismatch(self):
        poset = chain('a', 'b')
        partition = Partition(GroundSet(('x', 'y')), (('x', 'y'),))
        self.assertRaises(GroundMismatch, order.quotient, poset, partition)


class PreorderReduceTests(unittest.TestCase):

    def test_preorder_reduce_collapses_cycle(self):
        rel = StrictRelation(GroundSet(('a', 'b', 'c')),
                             frozenset({('a', 'b'), ('b', 'a'), ('b', 'c')}))
        partition, poset = order.preorder_reduce(rel)
        self.assertEqual((('a', 'b'), ('c',)), partition.blocks)
        self.assertEqual((('{a, b}', '{c}'),), poset.covers.sorted_pairs())

    def test_preorder_reduce_acyclic_gives_singletons(self):
        rel = StrictRelation(GroundSet(('a', 'b', 'c')),
                             frozenset({('a', 'b'), ('b', 'c')}))
        partition, poset = order.preorder_reduce(rel)
        self.assertEqual((('a',), ('b',), ('c',)), partition.blocks)
        self.assertEqual((('{a}', '{b}'), ('{b}', '{c}')), poset.covers.sorted_pairs())


if __name__ == '__main__':
    unittest.main()

import pytest

from patchwork.core.exceptions import InvalidInputError
from patchwork.domain.gf2 import (
    F2AffineSubspace,
    F2Subspace,
    dot,
    format_orthant,
    gf2_rank,
    intersect_cosets,
    parse_orthant,
    reduce_coords,
)


@pytest.mark.unit
class TestOrthantEncoding:
    """Tests for encoding orthants as bit words."""

    def test_parse_and_format(self):
        """Test that '-' becomes bit 1 in its coordinate."""
        assert parse_orthant("+-+") == 0b010
        assert parse_orthant("−+−") == 0b101
        assert format_orthant(0b110, 3) == "+--"

    def test_parse_rejects_wrong_length(self):
        """Test the required length."""
        with pytest.raises(InvalidInputError, match="length 2"):
            parse_orthant("+++", 2)

    def test_parse_rejects_unknown_character(self):
        """Test characters other than '+' and '-'."""
        with pytest.raises(InvalidInputError, match="Invalid sign character"):
            parse_orthant("+x")

    def test_reduce_coords_and_dot(self):
        """Test reduction modulo 2 and the dot product."""
        assert reduce_coords((3, 2, -1)) == 0b101
        assert dot(0b101, 0b111) == 0
        assert dot(0b100, 0b111) == 1

    def test_rank(self):
        """Test the rank with dependent rows."""
        assert gf2_rank([0b011, 0b110, 0b101]) == 2
        assert gf2_rank([]) == 0


@pytest.mark.unit
class TestSubspace:
    """Tests for subspaces in canonical form."""

    def test_canonical_equality(self):
        """Test that different generators give the same subspace."""
        assert F2Subspace.span(3, [0b011, 0b110]) == F2Subspace.span(3, [0b101, 0b011])

    @pytest.mark.parametrize(
        "n,vectors,expected",
        [
            (2, [0b01], [0b10]),
            (3, [], [0b001, 0b010, 0b100]),
            (3, [0b011], [0b011, 0b100]),
        ],
    )
    def test_orthogonal(self, n, vectors, expected):
        """Test the annihilator under the standard pairing."""
        assert F2Subspace.span(n, vectors).orthogonal() == F2Subspace.span(n, expected)

    def test_double_orthogonal(self):
        """Test that the orthogonal of the orthogonal is the subspace itself."""
        for vectors in ([0b0110], [0b1010, 0b0011], [0b1111, 0b0001, 0b0100]):
            sub = F2Subspace.span(4, vectors)
            assert sub.orthogonal().orthogonal() == sub
            assert sub.orthogonal().dim == 4 - sub.dim

    def test_reduce_gives_smallest_member(self):
        """Test that the representative is the smallest integer of its class."""
        sub = F2Subspace.span(3, [0b110])
        assert sub.reduce(0b111) == 0b001
        assert sub.reduce(0b001) == 0b001

    def test_elements_and_complement(self):
        """Test enumeration and the quotient representatives."""
        sub = F2Subspace.span(3, [0b011])
        assert sorted(sub.elements()) == [0, 0b011]
        reps = sub.complement_representatives()
        assert len(reps) == 4
        assert len({sub.reduce(r) for r in reps}) == 4

    def test_intersection(self):
        """Test the intersection of two planes of F2^3."""
        a = F2Subspace.span(3, [0b001, 0b010])
        b = F2Subspace.span(3, [0b010, 0b100])
        assert a.intersection(b) == F2Subspace.span(3, [0b010])


@pytest.mark.unit
class TestAffineSubspace:
    """Tests for cosets."""

    def test_from_members(self):
        """Test building from members that form a coset."""
        coset = F2AffineSubspace.from_members(2, [0b01, 0b11])
        assert coset.members() == [0b01, 0b11]
        assert coset.base == 0b01
        assert coset.size == 2

    def test_from_members_rejects_non_coset(self):
        """Test that three points of F2^2 do not form a coset."""
        assert F2AffineSubspace.from_members(2, [0, 1, 2]) is None
        assert F2AffineSubspace.from_members(2, []) is None

    def test_intersection_nonempty(self):
        """Test the intersection of two crossing affine lines."""
        a = F2AffineSubspace.of(0b001, F2Subspace.span(3, [0b010, 0b100]))
        b = F2AffineSubspace.of(0b010, F2Subspace.span(3, [0b001, 0b100]))
        result = intersect_cosets(a, b)
        assert result is not None
        assert result.members() == [0b011, 0b111]

    def test_intersection_empty(self):
        """Test disjoint parallel cosets."""
        direction = F2Subspace.span(2, [0b10])
        a = F2AffineSubspace.of(0b00, direction)
        b = F2AffineSubspace.of(0b01, direction)
        assert a.intersect(b) is None

    def test_translate(self):
        """Test translating a coset."""
        coset = F2AffineSubspace.of(0, F2Subspace.span(2, [0b01]))
        assert coset.translate(0b10).members() == [0b10, 0b11]

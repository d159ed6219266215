//! Exact permutation and finite-group arithmetic.

pub mod group;
pub mod perm;
pub mod permgroup;

pub use group::{ElementSet, FiniteGroup, GroupExt, TableGroup};
pub use perm::Permutation;
pub use permgroup::{ConjClass, PermGroup, DEFAULT_CAP, TABLE_CAP};

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    #[test]
    fn q8_has_five_classes() {
        let q8 = catalog::group("Q8").unwrap();
        let mut sizes: Vec<usize> = q8.classes().iter().map(|c| c.members.len()).collect();
        sizes.sort_unstable();
        assert_eq!(sizes, vec![1, 1, 2, 2, 2]);
        assert_eq!(q8.center().count_ones(..), 2);
        assert_eq!(q8.abelianization_rank(2).unwrap(), 2);
    }

    #[test]
    fn abelian_classes_are_singletons() {
        let g = catalog::group("C4xC2_S8").unwrap();
        assert_eq!(g.classes().len(), 8);
        assert_eq!(g.center().count_ones(..), 8);
        assert_eq!(g.abelianization_rank(2).unwrap(), 2);
    }

    #[test]
    fn d4_on_eight_points_has_center_of_order_two() {
        let g = catalog::group("D4_S8").unwrap();
        assert_eq!(g.center().count_ones(..), 2);
    }

    #[test]
    fn q8_mod_center_is_klein_four() {
        let q8 = catalog::group("Q8").unwrap();
        let q = q8.quotient(&q8.center()).unwrap();
        assert_eq!(q.order(), 4);
        assert_eq!(q.order_profile(), vec![1, 2, 2, 2]);
    }

    #[test]
    fn c4xc2_mod_square_of_a() {
        let g = catalog::group("C4xC2_S8").unwrap();
        // the unique square of an order-4 element that is a square
        let a2 = (0..g.order()).find(|&x| x != 0 && (0..g.order()).any(|y| g.pow(y, 2) == x)).unwrap();
        let n = g.closure(&[a2]);
        let q = g.quotient(&n).unwrap();
        assert_eq!(q.order(), 4);
    }

    #[test]
    fn trivial_quotient_keeps_order_profile() {
        let g = catalog::group("D4_S4").unwrap();
        let q = g.quotient(&g.singleton(0)).unwrap();
        assert_eq!(q.order(), g.order());
        assert_eq!(q.order_profile(), g.order_profile());
    }

    #[test]
    fn abelianization_rank_rejects_composite() {
        let q8 = catalog::group("Q8").unwrap();
        assert!(q8.abelianization_rank(6).is_err());
    }
}

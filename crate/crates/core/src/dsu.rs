/// Disjoint-set forest with union by size and path halving.
#[derive(Debug, Clone)]
pub struct DisjointSets {
    parent: Vec<usize>,
    size: Vec<usize>,
    components: usize,
}

impl DisjointSets {
    pub fn new(n: usize) -> Self {
        Self {
            parent: (0..n).collect(),
            size: vec![1; n],
            components: n,
        }
    }

    pub fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            let grand = self.parent[self.parent[x]];
            self.parent[x] = grand;
            x = grand;
        }
        x
    }

    /// Joins the sets of `a` and `b`. Returns the surviving root, or
    /// `None` when they were already joined.
    pub fn union(&mut self, a: usize, b: usize) -> Option<usize> {
        let (mut ra, mut rb) = (self.find(a), self.find(b));
        if ra == rb {
            return None;
        }
        if self.size[ra] < self.size[rb] {
            std::mem::swap(&mut ra, &mut rb);
        }
        self.parent[rb] = ra;
        self.size[ra] += self.size[rb];
        self.components -= 1;
        Some(ra)
    }

    pub fn components(&self) -> usize {
        self.components
    }

    pub fn set_size(&mut self, x: usize) -> usize {
        let r = self.find(x);
        self.size[r]
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unions_track_component_count() {
        let mut d = DisjointSets::new(5);
        assert_eq!(d.components(), 5);
        assert!(d.union(0, 1).is_some());
        assert!(d.union(1, 0).is_none());
        d.union(3, 4);
        assert_eq!(d.components(), 3);
        assert_eq!(d.set_size(4), 2);
        d.union(0, 4);
        assert_eq!(d.find(1), d.find(3));
        assert_eq!(d.set_size(0), 4);
    }
}

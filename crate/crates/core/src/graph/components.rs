use super::Graph;

/// Disjoint-set forest with path halving and union by size.
#[derive(Debug, Clone)]
pub struct UnionFind {
    parent: Vec<usize>,
    size: Vec<usize>,
    sets: usize,
}

impl UnionFind {
    pub fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
            size: vec![1; n],
            sets: n,
        }
    }

    pub fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    /// Returns false if `a` and `b` were already joined.
    pub fn union(&mut self, a: usize, b: usize) -> bool {
        let (mut ra, mut rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        if self.size[ra] < self.size[rb] {
            std::mem::swap(&mut ra, &mut rb);
        }
        self.parent[rb] = ra;
        self.size[ra] += self.size[rb];
        self.sets -= 1;
        true
    }

    pub fn set_count(&self) -> usize {
        self.sets
    }
}

pub fn component_count(graph: &Graph) -> usize {
    let mut uf = UnionFind::new(graph.node_count());
    for p in graph.edges() {
        uf.union(p.u.index(), p.v.index());
    }
    uf.set_count()
}

/// Component id per node; ids are dense and numbered by smallest member.
pub fn connected_components(graph: &Graph) -> Vec<usize> {
    let mut uf = UnionFind::new(graph.node_count());
    for p in graph.edges() {
        uf.union(p.u.index(), p.v.index());
    }
    let mut id_of_root = vec![usize::MAX; graph.node_count()];
    let mut next = 0;
    (0..graph.node_count())
        .map(|v| {
            let r = uf.find(v);
            if id_of_root[r] == usize::MAX {
                id_of_root[r] = next;
                next += 1;
            }
            id_of_root[r]
        })
        .collect()
}

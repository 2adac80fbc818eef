#include "mbrgg/lehman.hpp"

namespace mbrgg {

std::vector<char> tree_cut_side(std::size_t n, const Board& board, const std::vector<char>& tree,
                                EdgeId removed) {
  std::vector<std::vector<Vertex>> adj(n);
  for (EdgeId e = 0; e < board.size(); ++e)
    if (tree[e] && e != removed) {
      adj[board.edge(e).u].push_back(board.edge(e).v);
      adj[board.edge(e).v].push_back(board.edge(e).u);
    }
  std::vector<char> side(n, 0);
  std::vector<Vertex> stack{board.edge(removed).u};
  side[stack.back()] = 1;
  while (!stack.empty()) {
    Vertex v = stack.back();
    stack.pop_back();
    for (Vertex w : adj[v])
      if (!side[w]) {
        side[w] = 1;
        stack.push_back(w);
      }
  }
  return side;
}

LehmanMaker::LehmanMaker(const Board& board, LehmanOptions opts) : board_(&board), opts_(opts) {
  auto packing = two_tree_packing(board.order(), board.edges());
  if (!packing)
    throw PreconditionError("lehman_maker: board does not pack two edge-disjoint spanning trees");
  for (auto& t : in_tree_) t.assign(board.size(), 0);
  for (auto i : packing->t1) in_tree_[0][i] = 1;
  for (auto i : packing->t2) in_tree_[1][i] = 1;
}

void LehmanMaker::on_opponent_move(const GameState&, EdgeId e) { pending_.push_back(e); }

void LehmanMaker::repair(const GameState& state, EdgeId broken) {
  for (int i = 0; i < 2; ++i) {
    if (!in_tree_[i][broken]) continue;
    auto side = tree_cut_side(board_->order(), *board_, in_tree_[i], broken);
    EdgeId owned = kNoEdge, free = kNoEdge;
    for (EdgeId f = 0; f < board_->size(); ++f) {
      if (!in_tree_[1 - i][f]) continue;
      const Edge& ed = board_->edge(f);
      if (side[ed.u] == side[ed.v]) continue;
      if (state.owner(f) == Side::maker && owned == kNoEdge) owned = f;
      if (state.unclaimed(f) && free == kNoEdge && f != forced_) free = f;
    }
    EdgeId f = owned != kNoEdge ? owned : free;
    in_tree_[i][broken] = 0;
    if (f == kNoEdge) {
      ++violations_;
      continue;
    }
    in_tree_[i][f] = 1;
    if (f == free && forced_ == kNoEdge) forced_ = f;
  }
}

EdgeId LehmanMaker::free_tree_edge(const GameState& state) const {
  for (EdgeId e : state.free_edges())
    if (in_tree_[0][e] || in_tree_[1][e]) return e;
  return state.free_edges().empty() ? kNoEdge : state.free_edges().front();
}

void LehmanMaker::set_tree(int k, std::vector<EdgeId> edges) {
  std::fill(in_tree_[k].begin(), in_tree_[k].end(), 0);
  for (EdgeId e : edges) in_tree_[k][e] = 1;
}

void LehmanMaker::repack(const GameState& state, EdgeId just_claimed) {
  const std::size_t n = board_->order();
  auto is_maker = [&](EdgeId e) { return e == just_claimed || state.owner(e) == Side::maker; };
  UnionFind uf(n);
  std::vector<EdgeId> forest;
  for (EdgeId e = 0; e < board_->size(); ++e)
    if (is_maker(e) && uf.unite(board_->edge(e).u, board_->edge(e).v)) forest.push_back(e);
  std::vector<std::size_t> comp(n, 0);
  std::vector<std::size_t> label(n, n);
  std::size_t c = 0;
  for (Vertex v = 0; v < n; ++v) {
    std::size_t r = uf.find(v);
    if (label[r] == n) label[r] = c++;
    comp[v] = label[r];
  }
  std::vector<Edge> contracted;
  std::vector<EdgeId> origin;
  for (EdgeId e = 0; e < board_->size(); ++e) {
    if (!state.unclaimed(e) || e == just_claimed) continue;
    std::size_t a = comp[board_->edge(e).u], b = comp[board_->edge(e).v];
    if (a == b) continue;
    contracted.push_back({static_cast<Vertex>(a), static_cast<Vertex>(b)});
    origin.push_back(e);
  }
  ++checks_;
  auto packing = two_tree_packing(c, contracted);
  if (!packing) {
    ++violations_;
    return;
  }
  std::vector<EdgeId> t1 = forest, t2 = forest;
  for (auto i : packing->t1) t1.push_back(origin[i]);
  for (auto i : packing->t2) t2.push_back(origin[i]);
  set_tree(0, std::move(t1));
  set_tree(1, std::move(t2));
}

EdgeId LehmanMaker::next_move(const GameState& state) {
  forced_ = kNoEdge;
  for (EdgeId e : pending_) repair(state, e);
  pending_.clear();
  EdgeId choice = forced_ != kNoEdge && state.unclaimed(forced_) ? forced_ : free_tree_edge(state);
  if (opts_.repack_each_move && choice != kNoEdge) repack(state, choice);
  return choice;
}

std::optional<Certificate> LehmanMaker::certificate(const GameState& state) {
  Certificate cert;
  cert.kind = Certificate::Kind::spanning_tree;
  for (EdgeId e = 0; e < board_->size(); ++e)
    if (in_tree_[0][e] && state.owner(e) == Side::maker) cert.edges.push_back(board_->edge(e));
  return cert;
}

}  // namespace mbrgg

//
// Project sggm - Copyright 2026 The sggm Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include "sggm/chem/smiles.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <optional>
#include <vector>

#include "sggm/chem/canonical.hpp"
#include "sggm/chem/stereo.hpp"

namespace sggm::chem {

namespace {

char flip_dir(char c) { return c == '/' ? '\\' : '/'; }
bool is_dir(char c) { return c == '/' || c == '\\'; }
bool is_order_char(char c) { return c == '-' || c == '=' || c == '#'; }

int inversions(const std::vector<int>& v) {
  int inv = 0;
  for (size_t i = 0; i < v.size(); ++i)
    for (size_t j = i + 1; j < v.size(); ++j)
      if (v[i] > v[j]) ++inv;
  return inv;
}

// ---------------------------------------------------------------------------
// Parsing

struct Slot {
  enum Kind { kAtom, kHydrogen, kRingEvent };
  Kind kind;
  int value;
};

struct AtomScratch {
  bool bracket = false;
  int explicit_h = 0;
  bool has_chir = false;
  bool ccw = false;  // '@' (counterclockwise) vs '@@'
  std::size_t pos = 0;
  std::vector<Slot> slots;
};

struct DirMark {
  int from;
  char ch;
  std::size_t pos;
};

struct BondScratch {
  bool kek_candidate = false;
  std::vector<DirMark> dirs;
};

struct RingOpen {
  int atom = -1;
  char bondchar = 0;
  std::size_t pos = 0;
  int event = -1;
};

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  MolGraph run() {
    while (i_ < text_.size()) {
      const char c = text_[i_];
      if (c == '(') {
        if (prev_ < 0) throw SmilesError("branch before any atom", i_);
        if (pending_) throw SmilesError("bond before branch open", i_);
        stack_.push_back(prev_);
        ++i_;
      } else if (c == ')') {
        if (stack_.empty()) throw SmilesError("unmatched ')'", i_);
        if (pending_) throw SmilesError("dangling bond before ')'", i_);
        prev_ = stack_.back();
        stack_.pop_back();
        ++i_;
      } else if (is_order_char(c) || is_dir(c)) {
        if (pending_) throw SmilesError("two consecutive bond symbols", i_);
        pending_ = c;
        pending_pos_ = i_;
        ++i_;
      } else if (std::isdigit(static_cast<unsigned char>(c)) || c == '%') {
        handle_ring_digit();
      } else if (c == '.') {
        throw SmilesError("multi-fragment records are not supported", i_);
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        throw SmilesError("unexpected whitespace", i_);
      } else {
        parse_atom();
      }
    }
    finalize();
    return std::move(g_);
  }

 private:
  void handle_ring_digit() {
    if (prev_ < 0) throw SmilesError("ring closure before any atom", i_);
    const std::size_t pos = i_;
    int digit;
    if (text_[i_] == '%') {
      if (i_ + 2 >= text_.size() ||
          !std::isdigit(static_cast<unsigned char>(text_[i_ + 1])) ||
          !std::isdigit(static_cast<unsigned char>(text_[i_ + 2])))
        throw SmilesError("malformed %nn ring closure", i_);
      digit = (text_[i_ + 1] - '0') * 10 + (text_[i_ + 2] - '0');
      i_ += 3;
    } else {
      digit = text_[i_] - '0';
      if (digit == 0) throw SmilesError("ring closure digit 0", i_);
      ++i_;
    }
    const char bondchar = pending_.value_or(0);
    pending_.reset();

    RingOpen& slot = rings_[digit];
    if (slot.atom < 0) {
      slot = {prev_, bondchar, pos, next_event_++};
      scratch_[prev_].slots.push_back({Slot::kRingEvent, slot.event});
      ring_events_.push_back(-1);
    } else {
      const int partner = slot.atom;
      if (partner == prev_)
        throw SmilesError("ring bond closes on the same atom", pos);
      if (g_.has_bond(partner, prev_))
        throw SmilesError("duplicate ring bond", pos);
      make_bond(partner, prev_, slot.bondchar, slot.pos, bondchar, pos);
      scratch_[prev_].slots.push_back({Slot::kAtom, partner});
      ring_events_[slot.event] = prev_;
      slot = RingOpen{};
    }
  }

  // Creates the bond a-b given the bond characters written at a's side and at
  // b's side (ring closures can carry both; chain bonds only char_a with
  // from = a).
  void make_bond(int a, int b, char char_a, std::size_t pos_a, char char_b,
                 std::size_t pos_b) {
    char effective = 0;
    int dir_from = -1;
    char dir_ch = 0;
    if (char_a && char_b) {
      if (is_order_char(char_a) && is_order_char(char_b)) {
        if (char_a != char_b)
          throw SmilesError("conflicting ring bond orders", pos_b);
        effective = char_a;
      } else if (is_dir(char_a) && is_dir(char_b)) {
        if (char_a != flip_dir(char_b))
          throw SmilesError("conflicting ring bond directions", pos_b);
        dir_from = a;
        dir_ch = char_a;
      } else if ((is_dir(char_a) && char_b == '-') ||
                 (char_a == '-' && is_dir(char_b))) {
        dir_from = is_dir(char_a) ? a : b;
        dir_ch = is_dir(char_a) ? char_a : char_b;
      } else {
        throw SmilesError("conflicting ring bond symbols", pos_b);
      }
    } else if (char_a || char_b) {
      const char c = char_a ? char_a : char_b;
      if (is_dir(c)) {
        dir_from = char_a ? a : b;
        dir_ch = c;
      } else {
        effective = c;
      }
    }

    BondOrder order = BondOrder::Single;
    bool candidate = false;
    if (effective == '=')
      order = BondOrder::Double;
    else if (effective == '#')
      order = BondOrder::Triple;
    else if (effective == 0 && dir_ch == 0 && g_.atom(a).aromatic &&
             g_.atom(b).aromatic)
      candidate = true;

    const int bond = g_.add_bond(a, b, order);
    bond_scratch_.resize(g_.bond_count());
    bond_scratch_[bond].kek_candidate = candidate;
    if (dir_ch) bond_scratch_[bond].dirs.push_back({dir_from, dir_ch, pos_a});
  }

  void parse_atom() {
    const std::size_t pos = i_;
    Atom atom;
    AtomScratch scratch;
    scratch.pos = pos;

    if (text_[i_] == '[') {
      scratch.bracket = true;
      ++i_;
      parse_bracket_body(atom, scratch);
    } else {
      parse_organic_symbol(atom);
    }

    const int idx = g_.add_atom(atom);
    scratch_.push_back(std::move(scratch));

    if (prev_ >= 0) {
      const char c = pending_.value_or(0);
      pending_.reset();
      make_bond(prev_, idx, c, pos, 0, pos);
      scratch_[prev_].slots.push_back({Slot::kAtom, idx});
      scratch_[idx].slots.push_back({Slot::kAtom, prev_});
    } else if (pending_) {
      throw SmilesError("bond with no preceding atom", pending_pos_);
    }
    if (scratch_[idx].explicit_h > 0)
      scratch_[idx].slots.push_back({Slot::kHydrogen, 0});
    prev_ = idx;
  }

  void parse_organic_symbol(Atom& atom) {
    const char c = text_[i_];
    if (c == 'C' && i_ + 1 < text_.size() && text_[i_ + 1] == 'l') {
      atom.element = Element::Cl;
      i_ += 2;
      return;
    }
    if (c == 'B' && i_ + 1 < text_.size() && text_[i_ + 1] == 'r') {
      atom.element = Element::Br;
      i_ += 2;
      return;
    }
    switch (c) {
      case 'C': atom.element = Element::C; break;
      case 'N': atom.element = Element::N; break;
      case 'O': atom.element = Element::O; break;
      case 'F': atom.element = Element::F; break;
      case 'P': atom.element = Element::P; break;
      case 'S': atom.element = Element::S; break;
      case 'c': atom.element = Element::C; atom.aromatic = true; break;
      case 'n': atom.element = Element::N; atom.aromatic = true; break;
      case 'o': atom.element = Element::O; atom.aromatic = true; break;
      case 's': atom.element = Element::S; atom.aromatic = true; break;
      case 'p': atom.element = Element::P; atom.aromatic = true; break;
      default:
        throw SmilesError("unsupported element or syntax", i_);
    }
    ++i_;
  }

  void parse_bracket_body(Atom& atom, AtomScratch& scratch) {
    if (i_ >= text_.size()) throw SmilesError("unterminated bracket atom", i_);
    // Symbol (one or two chars, lowercase single char = aromatic).
    if (i_ + 1 < text_.size() && std::isupper(static_cast<unsigned char>(text_[i_])) &&
        std::islower(static_cast<unsigned char>(text_[i_ + 1])) &&
        element_from_symbol(text_.substr(i_, 2))) {
      atom.element = *element_from_symbol(text_.substr(i_, 2));
      i_ += 2;
    } else {
      const char c = text_[i_];
      if (std::islower(static_cast<unsigned char>(c))) {
        Atom tmp;
        const std::size_t save = i_;
        parse_organic_symbol(tmp);  // reuse aromatic single-letter set
        if (!tmp.aromatic) throw SmilesError("unsupported element", save);
        atom.element = tmp.element;
        atom.aromatic = true;
      } else {
        auto e = element_from_symbol(text_.substr(i_, 1));
        if (!e) throw SmilesError("unsupported element", i_);
        atom.element = *e;
        ++i_;
      }
    }
    // Chirality.
    if (i_ < text_.size() && text_[i_] == '@') {
      scratch.has_chir = true;
      scratch.ccw = true;
      ++i_;
      if (i_ < text_.size() && text_[i_] == '@') {
        scratch.ccw = false;
        ++i_;
      }
    }
    // Explicit hydrogens.
    if (i_ < text_.size() && text_[i_] == 'H') {
      ++i_;
      scratch.explicit_h = 1;
      if (i_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[i_]))) {
        scratch.explicit_h = text_[i_] - '0';
        ++i_;
      }
    }
    // Charge.
    if (i_ < text_.size() && (text_[i_] == '+' || text_[i_] == '-')) {
      const char sign = text_[i_];
      int count = 1;
      ++i_;
      if (i_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[i_]))) {
        count = text_[i_] - '0';
        ++i_;
      } else {
        while (i_ < text_.size() && text_[i_] == sign) {
          ++count;
          ++i_;
        }
      }
      atom.charge = static_cast<std::int8_t>(sign == '+' ? count : -count);
    }
    if (i_ >= text_.size() || text_[i_] != ']')
      throw SmilesError("expected ']'", i_);
    ++i_;
  }

  void finalize() {
    if (!stack_.empty()) throw SmilesError("unclosed branch", text_.size());
    if (pending_) throw SmilesError("dangling bond", pending_pos_);
    for (const auto& [digit, open] : rings_) {
      if (open.atom >= 0)
        throw SmilesError("unclosed ring bond " + std::to_string(digit),
                          open.pos);
    }
    if (g_.empty()) throw SmilesError("empty SMILES", 0);
    kekulize();
    assign_hydrogens();
    resolve_stereo();
  }

  bool needs_double_bond(int atom) const {
    const Atom& a = g_.atom(atom);
    if (!a.aromatic) return false;
    for (const auto& e : g_.adjacency(atom))
      if (g_.bond(e.bond).order != BondOrder::Single) return false;
    switch (a.element) {
      case Element::O:
      case Element::S:
        return false;
      case Element::N:
      case Element::P:
        if (scratch_[atom].explicit_h > 0) return false;
        if (g_.degree(atom) == 3) return false;
        return true;
      default:
        return true;
    }
  }

  void kekulize() {
    std::vector<int> candidates;
    for (int b = 0; b < g_.bond_count(); ++b)
      if (bond_scratch_[b].kek_candidate) candidates.push_back(b);

    std::vector<bool> needs(g_.atom_count(), false);
    bool any = false;
    for (int v = 0; v < g_.atom_count(); ++v) {
      needs[v] = needs_double_bond(v);
      any = any || needs[v];
    }
    if (!any && candidates.empty()) return;

    // Link bonds between ring systems (biphenyl) are bridges and never
    // participate in the alternation.
    const auto ring = ring_bond_mask(g_);
    std::vector<std::vector<int>> cand_adj(g_.atom_count());
    for (int b : candidates) {
      if (!ring[b]) continue;
      cand_adj[g_.bond(b).u].push_back(b);
      cand_adj[g_.bond(b).v].push_back(b);
    }

    std::vector<int> match(g_.atom_count(), -1);
    if (!match_from(0, needs, cand_adj, match))
      throw SmilesError("kekulization failure (no valid alternation)", 0);
    for (int v = 0; v < g_.atom_count(); ++v)
      if (match[v] >= 0) g_.bond(match[v]).order = BondOrder::Double;
  }

  bool match_from(int start, const std::vector<bool>& needs,
                  const std::vector<std::vector<int>>& cand_adj,
                  std::vector<int>& match) {
    int a = start;
    while (a < g_.atom_count() && (!needs[a] || match[a] >= 0)) ++a;
    if (a >= g_.atom_count()) return true;
    for (int b : cand_adj[a]) {
      const Bond& bond = g_.bond(b);
      const int other = bond.u == a ? bond.v : bond.u;
      if (!needs[other] || match[other] >= 0) continue;
      match[a] = match[other] = b;
      if (match_from(a + 1, needs, cand_adj, match)) return true;
      match[a] = match[other] = -1;
    }
    return false;
  }

  void assign_hydrogens() {
    for (int v = 0; v < g_.atom_count(); ++v) {
      Atom& a = g_.atom(v);
      const int sum = bond_order_sum(g_, v);
      if (scratch_[v].bracket) {
        a.hcount = static_cast<std::uint8_t>(scratch_[v].explicit_h);
        if (sum + a.hcount > effective_max_valence(a.element, a.charge))
          throw SmilesError("valence violation", scratch_[v].pos);
      } else {
        const int fill = default_valence_fill(a.element, sum);
        if (fill < 0) throw SmilesError("valence violation", scratch_[v].pos);
        a.hcount = static_cast<std::uint8_t>(fill - sum);
      }
    }
  }

  void resolve_stereo() {
    const auto ranks = achiral_ranks(g_);

    for (int v = 0; v < g_.atom_count(); ++v) {
      if (!scratch_[v].has_chir) continue;
      std::vector<int> slot_ranks;
      bool ok = true;
      for (const Slot& s : scratch_[v].slots) {
        if (s.kind == Slot::kAtom)
          slot_ranks.push_back(ranks[s.value]);
        else if (s.kind == Slot::kHydrogen)
          slot_ranks.push_back(-1);
        else
          slot_ranks.push_back(ranks[ring_events_[s.value]]);
      }
      if (slot_ranks.size() != 4) ok = false;
      if (ok) {
        auto sorted = slot_ranks;
        std::sort(sorted.begin(), sorted.end());
        ok = std::adjacent_find(sorted.begin(), sorted.end()) == sorted.end();
      }
      if (!ok) continue;  // non-stereogenic by rank; tag dropped
      const int bit = (scratch_[v].ccw ? 0 : 1) ^ (inversions(slot_ranks) & 1);
      g_.atom(v).chirality = bit ? Chirality::R : Chirality::S;
    }

    for (int b = 0; b < g_.bond_count(); ++b) {
      if (g_.bond(b).order != BondOrder::Double) continue;
      const int u = g_.bond(b).u;
      const int v = g_.bond(b).v;
      int xu = -1, xv = -1;
      char du = 0, dv = 0;
      if (!marked_substituent(u, b, xu, du) ||
          !marked_substituent(v, b, xv, dv))
        continue;
      const int hu = higher_ranked_substituent(g_, ranks, u, v);
      const int hv = higher_ranked_substituent(g_, ranks, v, u);
      if (hu == -2 || hv == -2) continue;
      const bool same_side = du == dv;
      const bool same_side_high = same_side ^ (xu != hu) ^ (xv != hv);
      g_.bond(b).stereo = same_side_high ? BondStereo::Cis : BondStereo::Trans;
    }
  }

  // First direction-marked single bond at `u` other than `skip`; normalizes
  // the character to read from `u`, and checks a second mark for consistency.
  bool marked_substituent(int u, int skip, int& sub, char& dir) {
    sub = -1;
    for (const auto& e : g_.adjacency(u)) {
      if (e.bond == skip || bond_scratch_[e.bond].dirs.empty()) continue;
      const DirMark& m = bond_scratch_[e.bond].dirs.front();
      const char norm = m.from == u ? m.ch : flip_dir(m.ch);
      if (sub < 0) {
        sub = e.neighbor;
        dir = norm;
      } else if (norm == dir) {
        throw SmilesError("conflicting bond directions", m.pos);
      }
    }
    return sub >= 0;
  }

  std::string_view text_;
  std::size_t i_ = 0;
  MolGraph g_;
  std::vector<AtomScratch> scratch_;
  std::vector<BondScratch> bond_scratch_;
  std::map<int, RingOpen> rings_;
  std::vector<int> ring_events_;
  int next_event_ = 0;
  std::vector<int> stack_;
  int prev_ = -1;
  std::optional<char> pending_;
  std::size_t pending_pos_ = 0;
};

}  // namespace

MolGraph parse_smiles(std::string_view text) { return Parser(text).run(); }

// ---------------------------------------------------------------------------
// Writing

namespace {

struct WriterPlan {
  std::vector<int> parent, parent_bond, visit_order;
  std::vector<std::vector<int>> children;     // tree bonds, per atom
  std::vector<std::vector<int>> ring_open;    // ring bonds opened at atom
  std::vector<std::vector<int>> ring_close;   // ring bonds closed at atom
  std::vector<char> dir_char;                 // per bond, from bond.u; 0 = none
  std::vector<int> ranks;
};

class Writer {
 public:
  explicit Writer(const MolGraph& g) : g_(g) {}

  std::string run() {
    if (g_.empty()) return "";
    if (!is_connected(g_))
      throw std::invalid_argument("write_smiles: disconnected graph");
    plan_.ranks = achiral_ranks(g_);
    build_tree();
    assign_directions();
    ring_digit_.assign(g_.bond_count(), 0);
    emit_atom(0);
    return out_;
  }

 private:
  void build_tree() {
    const int n = g_.atom_count();
    plan_.parent.assign(n, -1);
    plan_.parent_bond.assign(n, -1);
    plan_.children.assign(n, {});
    plan_.ring_open.assign(n, {});
    plan_.ring_close.assign(n, {});
    std::vector<int> visit_time(n, -1);
    std::vector<bool> bond_used(g_.bond_count(), false);
    int timer = 0;

    struct Frame {
      int atom;
      std::size_t pos;
    };
    std::vector<Frame> stack{{0, 0}};
    visit_time[0] = timer++;
    while (!stack.empty()) {
      Frame& f = stack.back();
      const auto& adj = g_.adjacency(f.atom);
      // Neighbors in ascending atom order for determinism.
      if (f.pos == 0 && adj.size() > 1) { /* adjacency already deterministic */ }
      if (f.pos < adj.size()) {
        const AdjEntry e = adj[f.pos++];
        if (bond_used[e.bond]) continue;
        bond_used[e.bond] = true;
        if (visit_time[e.neighbor] < 0) {
          visit_time[e.neighbor] = timer++;
          plan_.parent[e.neighbor] = f.atom;
          plan_.parent_bond[e.neighbor] = e.bond;
          plan_.children[f.atom].push_back(e.neighbor);
          stack.push_back({e.neighbor, 0});
        } else {
          // Ring bond: opens at the earlier-visited endpoint.
          const int other = e.neighbor;
          if (visit_time[other] < visit_time[f.atom]) {
            plan_.ring_open[other].push_back(e.bond);
            plan_.ring_close[f.atom].push_back(e.bond);
          } else {
            plan_.ring_open[f.atom].push_back(e.bond);
            plan_.ring_close[other].push_back(e.bond);
          }
        }
      } else {
        stack.pop_back();
      }
    }
    // Ring openings at an atom sorted by the closing atom's visit time so the
    // emitted digit order is stable.
    for (auto& opens : plan_.ring_open) {
      std::sort(opens.begin(), opens.end(), [&](int a, int b) {
        auto far = [&](int bond) {
          const Bond& bd = g_.bond(bond);
          return std::max(visit_time[bd.u], visit_time[bd.v]);
        };
        return far(a) < far(b);
      });
    }
  }

  char dir_from(int bond, int atom) const {
    const char c = plan_.dir_char[bond];
    if (!c) return 0;
    return g_.bond(bond).u == atom ? c : flip_dir(c);
  }

  void set_dir_from(int bond, int atom, char c) {
    plan_.dir_char[bond] = g_.bond(bond).u == atom ? c : flip_dir(c);
  }

  void assign_directions() {
    plan_.dir_char.assign(g_.bond_count(), 0);
    for (int b = 0; b < g_.bond_count(); ++b) {
      const Bond& bond = g_.bond(b);
      if (bond.order != BondOrder::Double || bond.stereo == BondStereo::None)
        continue;
      if (bond.stereo != BondStereo::Cis && bond.stereo != BondStereo::Trans &&
          bond.stereo != BondStereo::E && bond.stereo != BondStereo::Z)
        continue;
      const bool want_cis =
          bond.stereo == BondStereo::Cis || bond.stereo == BondStereo::Z;
      const int u = bond.u, v = bond.v;
      const int su = pick_marker_bond(u, b);
      const int sv = pick_marker_bond(v, b);
      if (su < 0 || sv < 0) continue;  // no substituent to carry the marker
      const int hu = higher_ranked_substituent(g_, plan_.ranks, u, v);
      const int hv = higher_ranked_substituent(g_, plan_.ranks, v, u);
      if (hu == -2 || hv == -2) continue;
      const int xu = g_.bond(su).u == u ? g_.bond(su).v : g_.bond(su).u;
      const int xv = g_.bond(sv).u == v ? g_.bond(sv).v : g_.bond(sv).u;
      const bool same_side = want_cis ^ (xu != hu) ^ (xv != hv);

      const char cu = dir_from(su, u);
      const char cv = dir_from(sv, v);
      if (cu && cv) {
        if ((cu == cv) != same_side)
          throw std::runtime_error("write_smiles: conflicting stereo constraints");
      } else if (cu) {
        set_dir_from(sv, v, same_side ? cu : flip_dir(cu));
      } else if (cv) {
        set_dir_from(su, u, same_side ? cv : flip_dir(cv));
      } else {
        set_dir_from(su, u, '/');
        set_dir_from(sv, v, same_side ? '/' : '\\');
      }
    }
  }

  // Prefers a marker bond that already carries a direction (shared between
  // conjugated double bonds), else the first single bond in adjacency order.
  int pick_marker_bond(int u, int skip) const {
    int first = -1;
    for (const auto& e : g_.adjacency(u)) {
      if (e.bond == skip || g_.bond(e.bond).order != BondOrder::Single) continue;
      if (plan_.dir_char[e.bond]) return e.bond;
      if (first < 0) first = e.bond;
    }
    return first;
  }

  int take_digit(int bond) {
    for (int d = 1; d < 100; ++d) {
      if (!digit_in_use_[d]) {
        digit_in_use_[d] = true;
        ring_digit_[bond] = d;
        return d;
      }
    }
    throw std::runtime_error("write_smiles: ring closure digits exhausted");
  }

  void emit_bond_symbol(int bond, int from_atom) {
    const Bond& b = g_.bond(bond);
    if (b.order == BondOrder::Double)
      out_.push_back('=');
    else if (b.order == BondOrder::Triple)
      out_.push_back('#');
    else if (const char c = dir_from(bond, from_atom))
      out_.push_back(c);
  }

  void emit_digit(int d) {
    if (d < 10) {
      out_.push_back(static_cast<char>('0' + d));
    } else {
      out_.push_back('%');
      out_.push_back(static_cast<char>('0' + d / 10));
      out_.push_back(static_cast<char>('0' + d % 10));
    }
  }

  int expected_neutral_h(const Atom& a, int bond_sum) const {
    const int fill = default_valence_fill(a.element, bond_sum);
    return fill < 0 ? 0 : fill - bond_sum;
  }

  void emit_atom(int a) {  // NOLINT(misc-no-recursion)
    const Atom& atom = g_.atom(a);
    const int bond_sum = bond_order_sum(g_, a);
    const bool bracket = atom.charge != 0 ||
                         atom.chirality != Chirality::None ||
                         atom.hcount != expected_neutral_h(atom, bond_sum);
    if (!bracket) {
      out_ += element_symbol(atom.element);
    } else {
      out_.push_back('[');
      out_ += element_symbol(atom.element);
      if (atom.chirality != Chirality::None) emit_chirality(a);
      if (atom.hcount == 1)
        out_.push_back('H');
      else if (atom.hcount > 1) {
        out_.push_back('H');
        out_.push_back(static_cast<char>('0' + atom.hcount));
      }
      if (atom.charge != 0) {
        out_.push_back(atom.charge > 0 ? '+' : '-');
        const int mag = std::abs(atom.charge);
        if (mag > 1) out_.push_back(static_cast<char>('0' + mag));
      }
      out_.push_back(']');
    }
    for (int bond : plan_.ring_open[a]) {
      emit_bond_symbol(bond, a);
      emit_digit(take_digit(bond));
    }
    for (int bond : plan_.ring_close[a]) {
      const int d = ring_digit_[bond];
      emit_digit(d);
      digit_in_use_[d] = false;
    }
    const auto& kids = plan_.children[a];
    for (std::size_t k = 0; k < kids.size(); ++k) {
      const bool last = k + 1 == kids.size();
      if (!last) out_.push_back('(');
      emit_bond_symbol(plan_.parent_bond[kids[k]], a);
      emit_atom(kids[k]);
      if (!last) out_.push_back(')');
    }
  }

  void emit_chirality(int a) {
    // Slot order must match the parser: parent, implicit H, ring digits
    // (open then close, in emission order), then children.
    std::vector<int> slot_ranks;
    if (plan_.parent[a] >= 0) slot_ranks.push_back(plan_.ranks[plan_.parent[a]]);
    if (g_.atom(a).hcount == 1) slot_ranks.push_back(-1);
    auto push_partner = [&](int bond) {
      const Bond& b = g_.bond(bond);
      slot_ranks.push_back(plan_.ranks[b.u == a ? b.v : b.u]);
    };
    for (int bond : plan_.ring_open[a]) push_partner(bond);
    for (int bond : plan_.ring_close[a]) push_partner(bond);
    for (int kid : plan_.children[a]) slot_ranks.push_back(plan_.ranks[kid]);
    if (slot_ranks.size() != 4) return;  // cannot express; tag dropped
    auto sorted = slot_ranks;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) return;
    const int bit = g_.atom(a).chirality == Chirality::R ? 1 : 0;
    const bool ccw = ((bit ^ (inversions(slot_ranks) & 1)) == 0);
    out_ += ccw ? "@" : "@@";
  }

  const MolGraph& g_;
  WriterPlan plan_;
  std::string out_;
  std::vector<int> ring_digit_;
  std::array<bool, 100> digit_in_use_{};
};

}  // namespace

std::string write_smiles(const MolGraph& g) { return Writer(g).run(); }

}  // namespace sggm::chem

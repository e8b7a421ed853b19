#include "srgkit/geom/raster.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <unordered_map>

namespace srg::geom {

namespace {

std::shared_ptr<const std::vector<std::uint8_t>> disk_mask(int n) {
  static std::mutex mu;
  static std::map<int, std::shared_ptr<const std::vector<std::uint8_t>>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(n);
  if (it != cache.end()) return it->second;
  const int rows = n / 2;
  const double h = 2.0 / n;
  auto mask = std::make_shared<std::vector<std::uint8_t>>(std::size_t(n) * rows, 0);
  for (int j = 0; j < rows; ++j) {
    for (int i = 0; i < n; ++i) {
      const double x = -1.0 + (i + 0.5) * h;
      const double y = (j + 0.5) * h;
      (*mask)[std::size_t(j) * n + i] = (x * x + y * y < 1.0) ? 1 : 0;
    }
  }
  cache[n] = mask;
  return mask;
}

}  // namespace

Raster::Raster(int n, bool infinity_in)
    : n_(std::max(16, n - n % 2)), h_(2.0 / std::max(16, n - n % 2)), infinity_in_(infinity_in) {
  disk_shared_ = disk_mask(n_);
  disk_ = disk_shared_->data();
  cells_.assign(std::size_t(size()), 0);
  if (infinity_in_) {
    for (int k = 0; k < size(); ++k)
      if (!disk_[k]) cells_[k] = 1;
  }
}

Complex Raster::to_w(Complex z) {
  const double r = std::abs(z);
  if (!std::isfinite(r)) {
    const double a = std::arg(z);
    return std::isfinite(a) ? std::polar(1.0, a) : Complex(1.0, 0.0);
  }
  return z / (1.0 + r);
}

Complex Raster::from_w(Complex w) {
  double m = std::abs(w);
  const double cap = 1.0 - 1.0 / kInfinityModulus;
  if (m > cap) {
    w *= cap / m;
    m = cap;
  }
  return w / (1.0 - m);
}

int Raster::cell_of_w(Complex w) const {
  int i = int(std::floor((w.real() + 1.0) / h_));
  int j = int(std::floor(std::abs(w.imag()) / h_));
  i = std::clamp(i, 0, n_ - 1);
  j = std::clamp(j, 0, rows() - 1);
  return j * n_ + i;
}

int Raster::cell_of(Complex z) const { return cell_of_w(to_w(z)); }

Complex Raster::center_w(int idx) const {
  const int i = idx % n_;
  const int j = idx / n_;
  return {-1.0 + (i + 0.5) * h_, (j + 0.5) * h_};
}

std::vector<std::uint8_t> Raster::band() const {
  std::vector<std::uint8_t> out(std::size_t(size()), 0);
  const int R = rows();
  for (int j = 0; j < R; ++j) {
    for (int i = 0; i < n_; ++i) {
      const int k = j * n_ + i;
      const std::uint8_t v = cells_[k];
      bool mixed = false;
      for (int dj = -1; dj <= 1 && !mixed; ++dj) {
        int jj = j + dj;
        if (jj < 0) jj = -1 - jj;  // mirror across the real axis
        if (jj >= R) continue;
        for (int di = -1; di <= 1; ++di) {
          const int ii = i + di;
          if (ii < 0 || ii >= n_) continue;
          if (cells_[jj * n_ + ii] != v) {
            mixed = true;
            break;
          }
        }
      }
      out[k] = mixed ? 1 : 0;
    }
  }
  return out;
}

void densify_segment(Complex a, Complex b, double h,
                     const std::function<void(Complex)>& visit) {
  const Complex wa = Raster::to_w(a);
  const Complex wb = Raster::to_w(b);
  const double d = std::abs(wa - wb);
  const double step = 0.45 * h;
  if (!(d > step) || segment_at_infinity(a, b)) {
    visit(a);
    visit(b);
    return;
  }
  // The chart is not linear; bisect until the pieces are short enough.
  struct Piece {
    Complex a, b;
    Complex wa, wb;
    int depth;
  };
  std::vector<Piece> stack{{a, b, wa, wb, 0}};
  visit(a);
  while (!stack.empty()) {
    Piece p = stack.back();
    stack.pop_back();
    if (std::abs(p.wa - p.wb) <= step || p.depth > 40) {
      visit(p.b);
      continue;
    }
    const Complex m = 0.5 * (p.a + p.b);
    const Complex wm = Raster::to_w(m);
    stack.push_back({m, p.b, wm, p.wb, p.depth + 1});
    stack.push_back({p.a, m, p.wa, wm, p.depth + 1});
  }
}

FaceLabels label_faces(const Raster& g, const std::vector<std::uint8_t>& wall) {
  const int n = g.n();
  const int R = g.rows();
  const int total = g.size();
  FaceLabels out;
  out.label.assign(std::size_t(total), -1);

  auto blocked = [&](int k) { return wall[k] != 0 || !g.in_disk(k); };

  // Distance to the nearest wall or infinity cell; the real axis is not a
  // barrier since the grid continues as its mirror image.
  std::vector<std::int32_t> dist(std::size_t(total), -1);
  std::vector<int> queue;
  queue.reserve(std::size_t(total));
  for (int k = 0; k < total; ++k)
    if (blocked(k)) {
      dist[k] = 0;
      queue.push_back(k);
    }
  if (queue.empty()) {
    // no walls at all: seed from the grid rim so depth stays meaningful
    for (int i = 0; i < n; ++i) {
      dist[(R - 1) * n + i] = 0;
      queue.push_back((R - 1) * n + i);
    }
  }
  for (std::size_t q = 0; q < queue.size(); ++q) {
    const int k = queue[q];
    const int i = k % n;
    const int j = k / n;
    const int nb[4][2] = {{i - 1, j}, {i + 1, j}, {i, j - 1}, {i, j + 1}};
    for (auto& c : nb) {
      if (c[0] < 0 || c[0] >= n || c[1] < 0 || c[1] >= R) continue;
      const int kk = c[1] * n + c[0];
      if (dist[kk] >= 0) continue;
      dist[kk] = dist[k] + 1;
      queue.push_back(kk);
    }
  }

  std::vector<int> stack;
  for (int k = 0; k < total; ++k) {
    if (blocked(k) || out.label[k] >= 0) continue;
    const int id = out.count++;
    int best = k;
    out.label[k] = id;
    stack.assign(1, k);
    while (!stack.empty()) {
      const int c = stack.back();
      stack.pop_back();
      if (dist[c] > dist[best]) best = c;
      const int i = c % n;
      const int j = c / n;
      const int nb[4][2] = {{i - 1, j}, {i + 1, j}, {i, j - 1}, {i, j + 1}};
      for (auto& p : nb) {
        if (p[0] < 0 || p[0] >= n || p[1] < 0 || p[1] >= R) continue;
        const int kk = p[1] * n + p[0];
        if (blocked(kk) || out.label[kk] >= 0) continue;
        out.label[kk] = id;
        stack.push_back(kk);
      }
    }
    out.representative.push_back(best);
  }
  return out;
}

std::vector<std::vector<ContourVertex>> contour_loops(const Raster& r) {
  const int n = r.n();
  const int R = r.rows();
  const int W = n + 2;      // corner columns incl. padding
  const int H = 2 * R + 2;  // corner rows incl. padding, mirrored half below
  const bool inf = r.infinity_in();

  // folded cell index for a corner, -1 on padding
  auto corner_cell = [&](int ci, int cj) -> int {
    const int i = ci - 1;
    const int v = cj - 1 - R;
    if (i < 0 || i >= n || v < -R || v >= R) return -1;
    const int j = v >= 0 ? v : -1 - v;
    return j * n + i;
  };
  auto member = [&](int ci, int cj) -> bool {
    const int c = corner_cell(ci, cj);
    return c < 0 ? inf : r.get(c);
  };
  auto corner_w = [&](int ci, int cj) -> Complex {
    return {-1.0 + (ci - 1 + 0.5) * r.h(), (cj - 1 - R + 0.5) * r.h()};
  };

  std::unordered_map<std::int64_t, std::int64_t> next;
  auto hid = [&](int x, int y) -> std::int64_t { return 2 * (std::int64_t(y) * W + x); };
  auto vid = [&](int x, int y) -> std::int64_t { return 2 * (std::int64_t(y) * W + x) + 1; };

  for (int cj = 0; cj + 1 < H; ++cj) {
    for (int ci = 0; ci + 1 < W; ++ci) {
      const bool in[4] = {member(ci, cj), member(ci + 1, cj), member(ci + 1, cj + 1),
                          member(ci, cj + 1)};
      if (in[0] == in[1] && in[1] == in[2] && in[2] == in[3]) continue;
      const std::int64_t edge[4] = {hid(ci, cj), vid(ci + 1, cj), hid(ci, cj + 1), vid(ci, cj)};
      for (int k = 0; k < 4; ++k) {
        if (!(in[k] && !in[(k + 1) % 4])) continue;
        int m = (k + 3) % 4;
        while (in[m]) m = (m + 3) % 4;
        next[edge[k]] = edge[m];
      }
    }
  }

  auto vertex_of = [&](std::int64_t id) -> ContourVertex {
    const bool vertical = id & 1;
    const std::int64_t base = id >> 1;
    const int x = int(base % W);
    const int y = int(base / W);
    const int x2 = vertical ? x : x + 1;
    const int y2 = vertical ? y + 1 : y;
    const Complex wa = corner_w(x, y);
    const Complex wb = corner_w(x2, y2);
    const bool a_in = member(x, y);
    ContourVertex v;
    v.w = 0.5 * (wa + wb);
    const int ca = corner_cell(x, y);
    const int cb = corner_cell(x2, y2);
    v.in_cell = a_in ? ca : cb;
    v.out_cell = a_in ? cb : ca;
    const Complex d = a_in ? (wb - wa) : (wa - wb);
    v.out_dir = d / std::abs(d);
    return v;
  };

  // Deterministic traversal order regardless of hash layout.
  std::vector<std::int64_t> starts;
  starts.reserve(next.size());
  for (auto& kv : next) starts.push_back(kv.first);
  std::sort(starts.begin(), starts.end());

  std::unordered_map<std::int64_t, bool> seen;
  seen.reserve(next.size());
  std::vector<std::vector<ContourVertex>> loops;
  for (std::int64_t s : starts) {
    if (seen.count(s)) continue;
    std::vector<ContourVertex> loop;
    std::int64_t e = s;
    while (!seen.count(e)) {
      seen[e] = true;
      loop.push_back(vertex_of(e));
      auto it = next.find(e);
      if (it == next.end()) break;
      e = it->second;
    }
    if (loop.size() >= 2) loops.push_back(std::move(loop));
  }
  return loops;
}

}  // namespace srg::geom

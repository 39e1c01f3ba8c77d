#include <algorithm>
#include <array>
#include <cstdint>
#include <map>
#include <numeric>

#include "omnirep/imaging.hpp"

namespace omnirep {

namespace {

struct Bin {
    Rgb color;
    std::uint64_t count = 0;
};
using Box = std::vector<Bin>;

int channel(Rgb c, int ch) { return ch == 0 ? c.r : ch == 1 ? c.g : c.b; }

std::vector<Bin> histogram(const RgbImage& img) {
    std::map<Rgb, std::uint64_t> counts;
    for (const auto& p : img.pixels) ++counts[p];
    std::vector<Bin> bins;
    bins.reserve(counts.size());
    for (const auto& [c, n] : counts) bins.push_back({c, n});
    return bins;
}

Rgb weighted_mean(const Box& box) {
    std::array<std::uint64_t, 3> sum{};
    std::uint64_t total = 0;
    for (const auto& b : box) {
        for (int ch = 0; ch < 3; ++ch) sum[std::size_t(ch)] += b.count * std::uint64_t(channel(b.color, ch));
        total += b.count;
    }
    auto rounded = [&](int ch) { return std::uint8_t((2 * sum[std::size_t(ch)] + total) / (2 * total)); };
    return {rounded(0), rounded(1), rounded(2)};
}

void sort_by_channel(Box& box, int ch) {
    std::sort(box.begin(), box.end(), [ch](const Bin& a, const Bin& b) {
        const int va = channel(a.color, ch);
        const int vb = channel(b.color, ch);
        return va != vb ? va < vb : a.color < b.color;
    });
}

// Splits a box sorted on `ch` so that every bin left of the cut has a strictly smaller
// channel value than every bin right of it. This keeps leaf means pairwise distinct.
std::size_t clean_cut(const Box& box, int ch, std::size_t median) {
    const int v = channel(box[median].color, ch);
    auto value_at = [&](std::size_t i) { return channel(box[i].color, ch); };
    std::size_t s = 0;
    if (value_at(0) == v)
        while (value_at(s) <= v) ++s;
    else
        while (value_at(s) < v) ++s;
    return s;
}

std::vector<Rgb> median_cut_seed(const std::vector<Bin>& bins, int k) {
    std::vector<Box> boxes{bins};
    while (int(boxes.size()) < k) {
        int best_range = 0;
        std::size_t best_box = 0;
        int best_ch = 0;
        for (std::size_t i = 0; i < boxes.size(); ++i) {
            for (int ch = 0; ch < 3; ++ch) {
                auto [lo, hi] = std::minmax_element(boxes[i].begin(), boxes[i].end(), [ch](const Bin& a, const Bin& b) {
                    return channel(a.color, ch) < channel(b.color, ch);
                });
                const int range = channel(hi->color, ch) - channel(lo->color, ch);
                if (range > best_range) {
                    best_range = range;
                    best_box = i;
                    best_ch = ch;
                }
            }
        }
        if (best_range == 0) break;
        Box box = std::move(boxes[best_box]);
        sort_by_channel(box, best_ch);
        const std::uint64_t total = std::accumulate(box.begin(), box.end(), std::uint64_t{0},
                                                    [](std::uint64_t acc, const Bin& b) { return acc + b.count; });
        std::size_t median = 0;
        for (std::uint64_t seen = 0; median < box.size(); ++median) {
            seen += box[median].count;
            if (seen > total / 2) break;
        }
        const std::size_t cut = clean_cut(box, best_ch, median);
        boxes[best_box] = Box(box.begin(), box.begin() + std::ptrdiff_t(cut));
        boxes.insert(boxes.begin() + std::ptrdiff_t(best_box) + 1, Box(box.begin() + std::ptrdiff_t(cut), box.end()));
    }
    std::vector<Rgb> out;
    for (const auto& b : boxes) out.push_back(weighted_mean(b));
    return out;
}

struct Moments {
    double w = 0;
    std::array<double, 3> s{};
    double sq = 0;

    void add(const Bin& b) {
        const double n = double(b.count);
        w += n;
        for (int ch = 0; ch < 3; ++ch) {
            const double v = channel(b.color, ch);
            s[std::size_t(ch)] += n * v;
            sq += n * v * v;
        }
    }
    double sse() const {
        if (w == 0) return 0;
        return sq - (s[0] * s[0] + s[1] * s[1] + s[2] * s[2]) / w;
    }
    Moments minus(const Moments& o) const {
        Moments m;
        m.w = w - o.w;
        for (std::size_t ch = 0; ch < 3; ++ch) m.s[ch] = s[ch] - o.s[ch];
        m.sq = sq - o.sq;
        return m;
    }
};

// Greedy split on whichever (box, axis, cut) removes the most within-box squared error.
std::vector<Rgb> variance_split_seed(const std::vector<Bin>& bins, int k) {
    std::vector<Box> boxes{bins};
    while (int(boxes.size()) < k) {
        double best_gain = 0;
        std::size_t best_box = 0, best_cut = 0;
        int best_ch = -1;
        for (std::size_t i = 0; i < boxes.size(); ++i) {
            Moments all;
            for (const auto& b : boxes[i]) all.add(b);
            for (int ch = 0; ch < 3; ++ch) {
                Box box = boxes[i];
                sort_by_channel(box, ch);
                Moments left;
                for (std::size_t cut = 1; cut < box.size(); ++cut) {
                    left.add(box[cut - 1]);
                    if (channel(box[cut].color, ch) == channel(box[cut - 1].color, ch)) continue;
                    const double gain = all.sse() - left.sse() - all.minus(left).sse();
                    if (gain > best_gain) {
                        best_gain = gain;
                        best_box = i;
                        best_ch = ch;
                        best_cut = cut;
                    }
                }
            }
        }
        if (best_ch < 0) break;
        Box box = std::move(boxes[best_box]);
        sort_by_channel(box, best_ch);
        boxes[best_box] = Box(box.begin(), box.begin() + std::ptrdiff_t(best_cut));
        boxes.insert(boxes.begin() + std::ptrdiff_t(best_box) + 1, Box(box.begin() + std::ptrdiff_t(best_cut), box.end()));
    }
    std::vector<Rgb> out;
    for (const auto& b : boxes) out.push_back(weighted_mean(b));
    return out;
}

std::vector<Rgb> farthest_point_seed(const std::vector<Bin>& bins, int k) {
    const Rgb mean = weighted_mean(bins);
    std::vector<Rgb> out;
    std::vector<int> dist(bins.size());
    for (std::size_t i = 0; i < bins.size(); ++i) dist[i] = squared_distance(bins[i].color, mean);
    // First pick: farthest from the mean. Afterwards: farthest from every pick so far.
    out.push_back(bins[std::size_t(std::max_element(dist.begin(), dist.end()) - dist.begin())].color);
    for (std::size_t i = 0; i < bins.size(); ++i) dist[i] = squared_distance(bins[i].color, out.back());
    while (int(out.size()) < k) {
        const auto it = std::max_element(dist.begin(), dist.end());
        if (*it == 0) break;
        out.push_back(bins[std::size_t(it - dist.begin())].color);
        for (std::size_t i = 0; i < bins.size(); ++i)
            dist[i] = std::min(dist[i], squared_distance(bins[i].color, out.back()));
    }
    return out;
}

std::size_t nearest_index(const std::vector<Rgb>& pal, Rgb c) {
    std::size_t best = 0;
    int best_d = squared_distance(c, pal[0]);
    for (std::size_t j = 1; j < pal.size(); ++j) {
        const int d = squared_distance(c, pal[j]);
        if (d < best_d) {
            best_d = d;
            best = j;
        }
    }
    return best;
}

std::vector<Rgb> lloyd_refine(const std::vector<Bin>& bins, std::vector<Rgb> pal) {
    constexpr int kMaxIterations = 100;
    for (int it = 0; it < kMaxIterations; ++it) {
        std::vector<Box> clusters(pal.size());
        for (const auto& b : bins) clusters[nearest_index(pal, b.color)].push_back(b);
        auto next = pal;
        for (std::size_t j = 0; j < pal.size(); ++j)
            if (!clusters[j].empty()) next[j] = weighted_mean(clusters[j]);
        if (next == pal) break;
        pal = std::move(next);
    }
    return pal;
}

std::uint64_t total_squared_error(const std::vector<Bin>& bins, const std::vector<Rgb>& pal) {
    std::uint64_t err = 0;
    for (const auto& b : bins) err += b.count * std::uint64_t(squared_distance(b.color, pal[nearest_index(pal, b.color)]));
    return err;
}

}  // namespace

PalettedImage quantize(const RgbImage& img, int k) {
    if (k < 1 || k > 256) throw ImageError("color count must lie in [1, 256]");
    if (img.pixels.empty()) throw ImageError("cannot quantize an empty image");
    const auto bins = histogram(img);

    // Median cut is the primary candidate; the other seeds only win when refinement
    // leaves them with strictly lower total error.
    std::vector<Rgb> best = lloyd_refine(bins, median_cut_seed(bins, k));
    std::uint64_t best_err = total_squared_error(bins, best);
    for (auto seed : {variance_split_seed(bins, k), farthest_point_seed(bins, k)}) {
        auto pal = lloyd_refine(bins, std::move(seed));
        const auto err = total_squared_error(bins, pal);
        if (err < best_err) {
            best_err = err;
            best = std::move(pal);
        }
    }

    std::vector<Rgb> distinct;
    for (const auto& c : best)
        if (std::find(distinct.begin(), distinct.end(), c) == distinct.end()) distinct.push_back(c);

    std::vector<std::uint64_t> freq(distinct.size(), 0);
    for (const auto& b : bins) freq[nearest_index(distinct, b.color)] += b.count;
    std::vector<std::size_t> order(distinct.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return freq[a] > freq[b]; });
    std::vector<Rgb> colors;
    for (auto j : order)
        if (freq[j] > 0) colors.push_back(distinct[j]);

    PalettedImage out(img.width, img.height, Palette(std::move(colors)));
    for (std::size_t i = 0; i < img.pixels.size(); ++i) out.indices[i] = out.palette.nearest(img.pixels[i]);
    return out;
}

}  // namespace omnirep

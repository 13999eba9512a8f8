#include "hyptimes/entropy.hpp"

#include "hyptimes/errors.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <unordered_map>

namespace hyptimes {

namespace {

using LabelTable = Eigen::Matrix<std::uint64_t, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

void require_compatible(const PointMeasure& mu, const GridPartition& partition,
                        const SystemSpec& system) {
    if (mu.dim() != system.dim() || partition.dim() != system.dim())
        throw DimensionError("measure, partition and system dimensions must agree");
}

/// Row a, column k: atom id of T^k x_a, for k < horizon.
LabelTable label_table(const PointMeasure& mu, const GridPartition& partition,
                       const SystemSpec& system, std::size_t horizon) {
    LabelTable table(mu.size(), static_cast<Eigen::Index>(horizon));
    double x[4], y[4];
    for (Eigen::Index a = 0; a < mu.size(); ++a) {
        std::copy_n(mu.points().col(a).data(), mu.dim(), x);
        for (Eigen::Index k = 0; k < table.cols(); ++k) {
            table(a, k) = partition.atom_id(x);
            system.step_into(x, y);
            std::copy_n(y, mu.dim(), x);
        }
    }
    return table;
}

/// Shannon entropy of the grouping of `weights` by `keys`, after normalizing the weights.
template <typename Key>
double grouped_entropy(const std::vector<Key>& keys, const std::vector<double>& weights) {
    std::map<Key, double> groups;
    double total = 0.0;
    for (std::size_t i = 0; i < keys.size(); ++i) {
        groups[keys[i]] += weights[i];
        total += weights[i];
    }
    if (!(total > 0.0)) throw EmptyMeasure("entropy of a zero-mass measure");
    double h = 0.0;
    for (const auto& [key, w] : groups) {
        const double p = w / total;
        if (p > 0.0) h -= p * std::log(p);
    }
    return std::max(h, 0.0);
}

std::vector<std::uint64_t> labels_along(const LabelTable& table, Eigen::Index atom,
                                        const TimeSet& times) {
    std::vector<std::uint64_t> out;
    out.reserve(times.size());
    for (auto k : times) out.push_back(table(atom, static_cast<Eigen::Index>(k)));
    return out;
}

std::vector<std::uint64_t> labels_window(const LabelTable& table, Eigen::Index atom,
                                         std::size_t first, std::size_t m) {
    std::vector<std::uint64_t> out(m);
    for (std::size_t j = 0; j < m; ++j) out[j] = table(atom, static_cast<Eigen::Index>(first + j));
    return out;
}

/// H_{mu^F}(P^m) with mu^F = sum_a w_a sum_{k in F_a} delta_{T^k x_a} / normalizer.
double averaged_entropy(const LabelTable& table, const Eigen::VectorXd& weights,
                        std::span<const TimeSet> times, std::size_t m) {
    std::vector<std::vector<std::uint64_t>> keys;
    std::vector<double> w;
    for (Eigen::Index a = 0; a < table.rows(); ++a)
        for (auto k : times[static_cast<std::size_t>(a)]) {
            keys.push_back(labels_window(table, a, k, m));
            w.push_back(weights(a));
        }
    return grouped_entropy(keys, w);
}

} // namespace

double static_entropy(const PointMeasure& mu, const GridPartition& partition) {
    if (mu.dim() != partition.dim()) throw DimensionError("measure and partition dimensions differ");
    std::vector<std::uint64_t> keys;
    std::vector<double> w;
    for (Eigen::Index a = 0; a < mu.size(); ++a) {
        keys.push_back(partition.atom_id(mu.points().col(a).data()));
        w.push_back(mu.weights()(a));
    }
    return grouped_entropy(keys, w);
}

AtomLabel iterated_atom_label(const TorusPoint& x, const GridPartition& partition,
                              const TimeSet& times, const SystemSpec& system) {
    if (times.empty()) throw EmptyTimeSet("iterated partition needs a nonempty time set");
    if (partition.dim() != system.dim()) throw DimensionError("partition and system dimensions differ");
    const Orbit path = orbit(system, x, times.back() + 1);
    AtomLabel label;
    for (auto k : times)
        label.entries.emplace_back(k, partition.atom_id(path.col(static_cast<Eigen::Index>(k)).data()));
    return label;
}

double iterated_entropy(const PointMeasure& mu, const GridPartition& partition,
                        const TimeSet& times, const SystemSpec& system) {
    if (times.empty()) throw EmptyTimeSet("iterated partition needs a nonempty time set");
    require_compatible(mu, partition, system);
    const LabelTable table = label_table(mu, partition, system, times.back() + 1);
    std::vector<std::vector<std::uint64_t>> keys;
    std::vector<double> w;
    for (Eigen::Index a = 0; a < mu.size(); ++a) {
        keys.push_back(labels_along(table, a, times));
        w.push_back(mu.weights()(a));
    }
    return grouped_entropy(keys, w);
}

BoundPair misiurewicz_bound_fixed(const PointMeasure& mu, const GridPartition& partition,
                                  const TimeSet& times, std::size_t m, const SystemSpec& system) {
    if (times.empty()) throw EmptyTimeSet("Misiurewicz bound needs a nonempty time set");
    if (m == 0) throw InvalidParameter("block length m must be >= 1");
    require_compatible(mu, partition, system);
    const PointMeasure p = mu.normalized();
    const LabelTable table = label_table(p, partition, system, times.back() + m);

    const std::vector<TimeSet> same(static_cast<std::size_t>(p.size()), times);
    const double card = static_cast<double>(times.size());
    const double m_real = static_cast<double>(m);

    std::vector<std::vector<std::uint64_t>> keys;
    std::vector<double> w;
    for (Eigen::Index a = 0; a < p.size(); ++a) {
        keys.push_back(labels_along(table, a, times));
        w.push_back(p.weights()(a));
    }
    const double h_iterated = grouped_entropy(keys, w);
    const double boundary_size = static_cast<double>(boundary(times).size());

    BoundPair out;
    out.lhs = averaged_entropy(table, p.weights(), same, m) / m_real;
    out.rhs = h_iterated / card - 3.0 * m_real * partition.log_atom_count() * boundary_size / card;
    return out;
}

BoundPair misiurewicz_bound_setvalued(const PointMeasure& sample, const GridPartition& partition,
                                      std::span<const TimeSet> times, std::size_t m,
                                      const SystemSpec& system) {
    if (m == 0) throw InvalidParameter("block length m must be >= 1");
    require_compatible(sample, partition, system);
    if (static_cast<Eigen::Index>(times.size()) != sample.size())
        throw InvalidParameter("one time set per sample atom required");
    std::size_t horizon = 0;
    bool any = false;
    for (const auto& f : times)
        if (!f.empty()) {
            any = true;
            horizon = std::max(horizon, f.back() + 1);
        }
    if (!any) throw EmptyTimeSet("every time set is empty");

    const PointMeasure p = sample.normalized();
    const Eigen::VectorXd& w = p.weights();
    const LabelTable table = label_table(p, partition, system, horizon + m);
    const double m_real = static_cast<double>(m);
    const Eigen::Index atoms = p.size();

    double mean_card = 0.0;
    double penalty = 0.0;
    for (Eigen::Index a = 0; a < atoms; ++a) {
        const auto& f = times[static_cast<std::size_t>(a)];
        mean_card += w(a) * static_cast<double>(f.size());
        penalty += w(a) * 3.0 * m_real * static_cast<double>(boundary(f).size()) *
                   partition.log_atom_count();
    }

    // int -log mu(P^{F(x)}(x)) dmu(x), with the atom measured over the whole sample.
    double information = 0.0;
    for (Eigen::Index a = 0; a < atoms; ++a) {
        const auto& f = times[static_cast<std::size_t>(a)];
        double atom_mass = 0.0;
        for (Eigen::Index b = 0; b < atoms; ++b) {
            bool same = true;
            for (auto k : f) {
                const auto col = static_cast<Eigen::Index>(k);
                if (table(a, col) != table(b, col)) {
                    same = false;
                    break;
                }
            }
            if (same) atom_mass += w(b);
        }
        information -= w(a) * std::log(atom_mass);
    }

    std::vector<std::vector<std::size_t>> f_values;
    std::vector<double> f_weights;
    for (Eigen::Index a = 0; a < atoms; ++a) {
        const auto t = times[static_cast<std::size_t>(a)].times();
        f_values.emplace_back(t.begin(), t.end());
        f_weights.push_back(w(a));
    }
    const double h_f = grouped_entropy(f_values, f_weights);

    BoundPair out;
    out.lhs = mean_card / m_real * averaged_entropy(table, w, times, m);
    out.rhs = information - h_f - penalty;
    return out;
}

std::vector<DecayPoint> unstable_volume_decay(const SystemSpec& system, const TorusPoint& x,
                                              std::size_t n, const GridPartition& partition,
                                              double gamma) {
    validate_point(x, system.dim());
    if (partition.dim() != system.dim()) throw DimensionError("partition and system dimensions differ");
    if (!(gamma > 0.0 && gamma < 0.5)) throw InvalidParameter("segment half-length must lie in (0, 0.5)");
    const Eigen::VectorXd v = system.unstable_direction();
    const int d = system.dim();

    const auto atom_after = [&](double t, std::size_t steps) {
        double p[4], q[4];
        for (int i = 0; i < d; ++i) p[i] = wrap_unit(x(i) + t * v(i));
        for (std::size_t s = 0; s < steps; ++s) {
            system.step_into(p, q);
            std::copy_n(q, d, p);
        }
        return partition.atom_id(p);
    };

    // Shrinks the end of [0, end] (or [end, 0]) to the first exit from `target` after
    // `steps` iterations: a coarse scan finds the first crossing, bisection refines it.
    const auto shrink = [&](double end, std::size_t steps, std::uint64_t target) {
        constexpr int scan = 64;
        double inside = 0.0;
        double outside = end;
        bool crossed = false;
        for (int s = 1; s <= scan; ++s) {
            const double t = end * static_cast<double>(s) / scan;
            if (atom_after(t, steps) != target) {
                outside = t;
                crossed = true;
                break;
            }
            inside = t;
        }
        if (!crossed) return end;
        while (std::abs(outside - inside) > 1e-14) {
            const double mid = 0.5 * (inside + outside);
            if (atom_after(mid, steps) == target)
                inside = mid;
            else
                outside = mid;
        }
        return inside;
    };

    std::vector<DecayPoint> out;
    double lo = -gamma, hi = gamma;
    out.push_back({0, hi - lo, -std::log(hi - lo)});
    for (std::size_t k = 1; k <= n; ++k) {
        const std::size_t steps = k - 1;
        const std::uint64_t target = atom_after(0.0, steps);
        hi = shrink(hi, steps, target);
        lo = shrink(lo, steps, target);
        const double length = hi - lo;
        out.push_back({k, length, -std::log(length)});
    }
    return out;
}

std::vector<DecayPoint> mean_volume_decay(const SystemSpec& system,
                                          std::span<const TorusPoint> points, std::size_t n,
                                          const GridPartition& partition, double gamma) {
    if (points.empty()) throw InvalidParameter("volume decay needs at least one base point");
    std::vector<DecayPoint> out;
    for (const auto& x : points) {
        const auto curve = unstable_volume_decay(system, x, n, partition, gamma);
        if (out.empty()) {
            out.assign(curve.size(), DecayPoint{});
            for (std::size_t k = 0; k < curve.size(); ++k) out[k].k = curve[k].k;
        }
        for (std::size_t k = 0; k < curve.size(); ++k) {
            out[k].length += curve[k].length;
            out[k].neg_log_length += curve[k].neg_log_length;
        }
    }
    const auto count = static_cast<double>(points.size());
    for (auto& p : out) {
        p.length /= count;
        p.neg_log_length /= count;
    }
    return out;
}

double decay_slope(std::span<const DecayPoint> curve, std::size_t k_first, std::size_t k_last) {
    double sk = 0.0, sy = 0.0, skk = 0.0, sky = 0.0;
    double count = 0.0;
    for (const auto& p : curve) {
        if (p.k < k_first || p.k > k_last) continue;
        const double k = static_cast<double>(p.k);
        sk += k;
        sy += p.neg_log_length;
        skk += k * k;
        sky += k * p.neg_log_length;
        count += 1.0;
    }
    if (count < 2.0) throw InvalidParameter("slope fit needs at least two points");
    return (count * sky - sk * sy) / (count * skk - sk * sk);
}

} // namespace hyptimes

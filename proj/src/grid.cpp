#include "longbond/grid.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "longbond/errors.hpp"

namespace longbond {

MaturityGrid::MaturityGrid(std::vector<double> nodes) : nodes_(std::move(nodes)) {
    if (nodes_.size() < 3)
        throw ConfigError("maturity grid needs at least 3 nodes, got " +
                          std::to_string(nodes_.size()));
    if (nodes_.front() != 0.0)
        throw ConfigError("maturity grid must start at x=0");
    for (std::size_t i = 1; i < nodes_.size(); ++i)
        if (!(nodes_[i] > nodes_[i - 1]))
            throw ConfigError("maturity grid nodes must be strictly increasing");
}

MaturityGrid MaturityGrid::geometric(std::size_t n_nodes, double x_max, double growth) {
    if (n_nodes < 3) throw ConfigError("geometric grid needs at least 3 nodes");
    if (!(x_max > 0.0)) throw ConfigError("geometric grid needs x_max > 0");
    if (!(growth > 1.0)) throw ConfigError("geometric grid needs growth > 1");
    const std::size_t cells = n_nodes - 1;
    // first cell width so that sum of d0 * growth^i over cells equals x_max
    const double d0 = x_max * (growth - 1.0) / (std::pow(growth, double(cells)) - 1.0);
    std::vector<double> nodes(n_nodes);
    nodes[0] = 0.0;
    double d = d0;
    for (std::size_t i = 1; i < n_nodes; ++i) {
        nodes[i] = nodes[i - 1] + d;
        d *= growth;
    }
    nodes.back() = x_max; // absorb rounding
    return MaturityGrid(std::move(nodes));
}

MaturityGrid MaturityGrid::uniform(std::size_t n_nodes, double x_max) {
    if (n_nodes < 3) throw ConfigError("uniform grid needs at least 3 nodes");
    if (!(x_max > 0.0)) throw ConfigError("uniform grid needs x_max > 0");
    std::vector<double> nodes(n_nodes);
    for (std::size_t i = 0; i < n_nodes; ++i)
        nodes[i] = x_max * double(i) / double(n_nodes - 1);
    nodes[0] = 0.0;
    nodes.back() = x_max;
    return MaturityGrid(std::move(nodes));
}

MaturityGrid MaturityGrid::uniform_geometric(double dx, double x_switch,
                                             std::size_t tail_cells, double x_max) {
    if (!(dx > 0.0) || !(x_switch > dx) || !(x_max > x_switch))
        throw ConfigError("uniform_geometric grid needs 0 < dx < x_switch < x_max");
    if (tail_cells < 2) throw ConfigError("uniform_geometric grid needs at least 2 tail cells");
    std::vector<double> nodes;
    const auto head_cells = std::size_t(std::llround(x_switch / dx));
    for (std::size_t i = 0; i <= head_cells; ++i) nodes.push_back(double(i) * dx);
    // geometric tail: widths dx * g^i, i = 1..tail_cells, summing to x_max - x_switch.
    // solve g numerically by bisection on the cell-width sum.
    const double span = x_max - nodes.back();
    auto total = [&](double g) {
        double s = 0.0, d = dx;
        for (std::size_t i = 0; i < tail_cells; ++i) { d *= g; s += d; }
        return s;
    };
    double lo = 1.0 + 1e-12, hi = 2.0;
    while (total(hi) < span) hi *= 2.0;
    for (int it = 0; it < 200; ++it) {
        double mid = 0.5 * (lo + hi);
        (total(mid) < span ? lo : hi) = mid;
    }
    double g = 0.5 * (lo + hi), d = dx;
    for (std::size_t i = 0; i < tail_cells; ++i) {
        d *= g;
        nodes.push_back(nodes.back() + d);
    }
    nodes.back() = x_max;
    return MaturityGrid(std::move(nodes));
}

std::size_t MaturityGrid::locate(double x) const {
    if (x <= nodes_.front()) return 0;
    if (x >= nodes_.back()) return nodes_.size() - 2;
    auto it = std::upper_bound(nodes_.begin(), nodes_.end(), x);
    return std::size_t(it - nodes_.begin()) - 1;
}

} // namespace longbond

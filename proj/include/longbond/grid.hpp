#pragma once

#include <cstddef>
#include <memory>
#include <vector>

namespace longbond {

/// Discretization of the time-to-maturity axis x (Musiela parameterization).
/// Nodes start at 0, are strictly increasing, and the last node is the horizon
/// beyond which curves are extrapolated as constants.
class MaturityGrid {
public:
    explicit MaturityGrid(std::vector<double> nodes);

    /// Geometrically widening cells: dense near x=0, coarse at the long end.
    static MaturityGrid geometric(std::size_t n_nodes, double x_max, double growth = 1.04);

    static MaturityGrid uniform(std::size_t n_nodes, double x_max);

    /// Uniform spacing dx on [0, x_switch], then `tail_cells` geometrically
    /// widening cells out to x_max.  Used when step sizes must divide the
    /// short-end spacing exactly.
    static MaturityGrid uniform_geometric(double dx, double x_switch,
                                          std::size_t tail_cells, double x_max);

    const std::vector<double>& nodes() const { return nodes_; }
    std::size_t size() const { return nodes_.size(); }
    double x_max() const { return nodes_.back(); }
    double node(std::size_t i) const { return nodes_[i]; }

    /// Largest k with nodes[k] <= x, clamped to size()-2; callers interpolate in
    /// cell [k, k+1].  x beyond x_max returns the last cell.
    std::size_t locate(double x) const;

private:
    std::vector<double> nodes_;
};

using GridPtr = std::shared_ptr<const MaturityGrid>;

} // namespace longbond

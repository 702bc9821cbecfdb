#ifndef CAPSTRUCT_PANEL_HPP
#define CAPSTRUCT_PANEL_HPP

#include <Eigen/Dense>
#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "capstruct/dates.hpp"

namespace capstruct {

enum class PanelKind { Price, Cap };
enum class ReturnMode { Simple, Log };

/// Date-indexed, asset-labeled matrix with explicit missing entries.
/// Daily prices and monthly market caps share this representation; the
/// kind only changes validation messages. Immutable once built.
class Panel {
public:
    Panel(PanelKind kind,
          std::vector<Date> dates,
          std::vector<std::string> assets,
          std::vector<std::optional<double>> cells);

    PanelKind kind() const { return kind_; }
    const std::vector<Date>& dates() const { return dates_; }
    const std::vector<std::string>& assets() const { return assets_; }
    std::size_t rows() const { return dates_.size(); }
    std::size_t cols() const { return assets_.size(); }

    const std::optional<double>& at(std::size_t row, std::size_t col) const {
        return cells_[row * assets_.size() + col];
    }

    std::size_t missing_count() const;

    /// Column indices of assets present in every row.
    std::vector<std::size_t> full_history_assets() const;

    /// Present values of one row, in asset order.
    std::vector<double> row_present(std::size_t row) const;

    /// Row values with missing entries replaced by `fill`.
    std::vector<double> row_filled(std::size_t row, double fill) const;

    /// New panel over a column subset (asset order preserved).
    Panel select_assets(const std::vector<std::size_t>& cols) const;

    /// Dense matrix view; throws ValidationError if any entry is missing.
    Eigen::MatrixXd dense() const;

private:
    PanelKind kind_;
    std::vector<Date> dates_;
    std::vector<std::string> assets_;
    std::vector<std::optional<double>> cells_;
};

using PricePanel = Panel;
using CapPanel = Panel;

/// Per-period returns derived from a price panel. Row s corresponds to the
/// price date s+1; a return exists only when both bounding prices do.
struct ReturnsMatrix {
    std::vector<Date> dates;
    std::vector<std::string> assets;
    std::vector<std::optional<double>> cells; // rows x assets

    std::size_t rows() const { return dates.size(); }
    std::size_t cols() const { return assets.size(); }
    const std::optional<double>& at(std::size_t row, std::size_t col) const {
        return cells[row * assets.size() + col];
    }
    std::size_t missing_count() const;
    Eigen::MatrixXd dense() const;
};

/// month index -> that month's last trading day, as both an index into the
/// daily calendar and the resolved date.
struct CalendarMap {
    std::vector<std::size_t> month_to_day;
    std::vector<Date> day_date;

    std::size_t months() const { return month_to_day.size(); }
};

/// Reads a CSV panel: header `date,<asset>...`, ISO dates, empty cell = missing.
Panel load_panel(const std::string& path, PanelKind kind);

/// Parses panel CSV from an in-memory string (same format as load_panel).
Panel parse_panel_csv(const std::string& text, PanelKind kind, const std::string& origin = "<memory>");

/// Canonical CSV serialization; load_panel(write_panel(p)) round-trips exactly.
std::string panel_to_csv(const Panel& panel);
void write_panel(const Panel& panel, const std::string& path);

ReturnsMatrix compute_returns(const Panel& prices, ReturnMode mode);

/// Keeps exactly the assets with no missing entry in either panel.
/// Throws ConfigError when the intersection is empty.
std::pair<Panel, Panel> restrict_full_history(const Panel& prices, const Panel& caps);

/// Maps each cap month to the latest trading day <= that month's date.
CalendarMap build_calendar_map(const Panel& prices, const Panel& caps);

} // namespace capstruct

#endif // CAPSTRUCT_PANEL_HPP

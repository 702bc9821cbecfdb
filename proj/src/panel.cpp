#include "capstruct/panel.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <system_error>

#include "capstruct/csvio.hpp"
#include "capstruct/errors.hpp"

namespace capstruct {

namespace {

const char* kind_name(PanelKind kind) {
    return kind == PanelKind::Price ? "price" : "cap";
}

double parse_value(const std::string& field, std::size_t line, const std::string& origin) {
    double v = 0.0;
    const char* first = field.data();
    const char* last = field.data() + field.size();
    auto res = std::from_chars(first, last, v);
    if (res.ec != std::errc{} || res.ptr != last) {
        std::ostringstream msg;
        msg << origin << ":" << line << ": cannot parse numeric value '" << field << "'";
        throw ParseError(msg.str());
    }
    return v;
}

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> fields;
    std::string cur;
    for (char c : line) {
        if (c == ',') {
            fields.push_back(cur);
            cur.clear();
        } else if (c != '\r') {
            cur.push_back(c);
        }
    }
    fields.push_back(cur);
    return fields;
}

} // namespace

Panel::Panel(PanelKind kind,
             std::vector<Date> dates,
             std::vector<std::string> assets,
             std::vector<std::optional<double>> cells)
    : kind_(kind), dates_(std::move(dates)), assets_(std::move(assets)), cells_(std::move(cells)) {
    if (cells_.size() != dates_.size() * assets_.size()) {
        throw ContractError("panel cell count does not match dates x assets");
    }
    for (std::size_t i = 1; i < dates_.size(); ++i) {
        if (!(dates_[i - 1] < dates_[i])) {
            throw CalendarError("panel dates not strictly increasing at " + dates_[i].iso());
        }
    }
    for (std::size_t r = 0; r < dates_.size(); ++r) {
        for (std::size_t c = 0; c < assets_.size(); ++c) {
            const auto& cell = cells_[r * assets_.size() + c];
            if (cell && !(*cell > 0.0)) {
                std::ostringstream msg;
                msg << "non-positive " << kind_name(kind_) << " value " << *cell
                    << " at date " << dates_[r].iso() << ", asset " << assets_[c];
                throw ValidationError(msg.str());
            }
        }
    }
}

std::size_t Panel::missing_count() const {
    std::size_t n = 0;
    for (const auto& c : cells_)
        if (!c) ++n;
    return n;
}

std::vector<std::size_t> Panel::full_history_assets() const {
    std::vector<std::size_t> keep;
    for (std::size_t c = 0; c < cols(); ++c) {
        bool full = true;
        for (std::size_t r = 0; r < rows(); ++r) {
            if (!at(r, c)) {
                full = false;
                break;
            }
        }
        if (full) keep.push_back(c);
    }
    return keep;
}

std::vector<double> Panel::row_present(std::size_t row) const {
    std::vector<double> out;
    out.reserve(cols());
    for (std::size_t c = 0; c < cols(); ++c) {
        if (const auto& v = at(row, c)) out.push_back(*v);
    }
    return out;
}

std::vector<double> Panel::row_filled(std::size_t row, double fill) const {
    std::vector<double> out(cols(), fill);
    for (std::size_t c = 0; c < cols(); ++c) {
        if (const auto& v = at(row, c)) out[c] = *v;
    }
    return out;
}

Panel Panel::select_assets(const std::vector<std::size_t>& colsel) const {
    std::vector<std::string> assets;
    assets.reserve(colsel.size());
    for (std::size_t c : colsel) assets.push_back(assets_.at(c));
    std::vector<std::optional<double>> cells;
    cells.reserve(rows() * colsel.size());
    for (std::size_t r = 0; r < rows(); ++r) {
        for (std::size_t c : colsel) cells.push_back(at(r, c));
    }
    return Panel(kind_, dates_, std::move(assets), std::move(cells));
}

Eigen::MatrixXd Panel::dense() const {
    Eigen::MatrixXd m(rows(), cols());
    for (std::size_t r = 0; r < rows(); ++r) {
        for (std::size_t c = 0; c < cols(); ++c) {
            const auto& cell = at(r, c);
            if (!cell) {
                throw ValidationError("dense() on panel with missing entry at date " +
                                      dates_[r].iso() + ", asset " + assets_[c]);
            }
            m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = *cell;
        }
    }
    return m;
}

std::size_t ReturnsMatrix::missing_count() const {
    std::size_t n = 0;
    for (const auto& c : cells)
        if (!c) ++n;
    return n;
}

Eigen::MatrixXd ReturnsMatrix::dense() const {
    Eigen::MatrixXd m(rows(), cols());
    for (std::size_t r = 0; r < rows(); ++r) {
        for (std::size_t c = 0; c < cols(); ++c) {
            const auto& cell = at(r, c);
            if (!cell) {
                throw ValidationError("dense() on returns with missing entry at date " +
                                      dates[r].iso() + ", asset " + assets[c]);
            }
            m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = *cell;
        }
    }
    return m;
}

Panel parse_panel_csv(const std::string& text, PanelKind kind, const std::string& origin) {
    std::istringstream in(text);
    std::string line;
    if (!std::getline(in, line)) {
        throw ParseError(origin + ": empty file");
    }
    auto header = split_csv_line(line);
    if (header.empty() || header[0] != "date") {
        throw ParseError(origin + ":1: first header column must be 'date'");
    }
    std::vector<std::string> assets(header.begin() + 1, header.end());
    if (assets.empty()) {
        throw ParseError(origin + ":1: no asset columns");
    }

    std::vector<Date> dates;
    std::vector<std::optional<double>> cells;
    std::size_t lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty() || line == "\r") continue;
        auto fields = split_csv_line(line);
        if (fields.size() != assets.size() + 1) {
            std::ostringstream msg;
            msg << origin << ":" << lineno << ": expected " << assets.size() + 1
                << " fields, got " << fields.size();
            throw ParseError(msg.str());
        }
        Date d = Date::parse(fields[0]);
        if (!dates.empty() && !(dates.back() < d)) {
            throw CalendarError(origin + ":" + std::to_string(lineno) +
                                ": dates not strictly increasing at " + fields[0]);
        }
        dates.push_back(d);
        for (std::size_t c = 0; c < assets.size(); ++c) {
            const std::string& f = fields[c + 1];
            if (f.empty()) {
                cells.emplace_back(std::nullopt);
            } else {
                double v = parse_value(f, lineno, origin);
                if (!(v > 0.0)) {
                    std::ostringstream msg;
                    msg << origin << ":" << lineno << ": non-positive " << kind_name(kind)
                        << " value " << f << " in column " << assets[c];
                    throw ValidationError(msg.str());
                }
                cells.emplace_back(v);
            }
        }
    }
    if (dates.empty()) {
        throw ParseError(origin + ": no data rows");
    }
    return Panel(kind, std::move(dates), std::move(assets), std::move(cells));
}

Panel load_panel(const std::string& path, PanelKind kind) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw ParseError("cannot open " + path);
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_panel_csv(buf.str(), kind, path);
}

std::string panel_to_csv(const Panel& panel) {
    std::string out = "date";
    for (const auto& a : panel.assets()) {
        out += ',';
        out += a;
    }
    out += '\n';
    for (std::size_t r = 0; r < panel.rows(); ++r) {
        out += panel.dates()[r].iso();
        for (std::size_t c = 0; c < panel.cols(); ++c) {
            out += ',';
            if (const auto& v = panel.at(r, c)) out += format_double(*v);
        }
        out += '\n';
    }
    return out;
}

void write_panel(const Panel& panel, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw ConfigError("cannot write " + path);
    }
    out << panel_to_csv(panel);
}

ReturnsMatrix compute_returns(const Panel& prices, ReturnMode mode) {
    ReturnsMatrix ret;
    if (prices.rows() < 2) {
        throw ConfigError("need at least two price dates to compute returns");
    }
    ret.dates.assign(prices.dates().begin() + 1, prices.dates().end());
    ret.assets = prices.assets();
    ret.cells.reserve(ret.rows() * ret.cols());
    for (std::size_t r = 1; r < prices.rows(); ++r) {
        for (std::size_t c = 0; c < prices.cols(); ++c) {
            const auto& prev = prices.at(r - 1, c);
            const auto& cur = prices.at(r, c);
            if (prev && cur) {
                double g = *cur / *prev;
                ret.cells.emplace_back(mode == ReturnMode::Simple ? g - 1.0 : std::log(g));
            } else {
                ret.cells.emplace_back(std::nullopt);
            }
        }
    }
    return ret;
}

std::pair<Panel, Panel> restrict_full_history(const Panel& prices, const Panel& caps) {
    if (prices.assets() != caps.assets()) {
        // Intersect by name, preserving price-panel order.
        std::vector<std::size_t> pcols, ccols;
        for (std::size_t pc = 0; pc < prices.cols(); ++pc) {
            auto it = std::find(caps.assets().begin(), caps.assets().end(), prices.assets()[pc]);
            if (it == caps.assets().end()) continue;
            pcols.push_back(pc);
            ccols.push_back(static_cast<std::size_t>(it - caps.assets().begin()));
        }
        if (pcols.empty()) {
            throw ConfigError("price and cap panels share no assets");
        }
        return restrict_full_history(prices.select_assets(pcols), caps.select_assets(ccols));
    }

    auto price_full = prices.full_history_assets();
    auto cap_full = caps.full_history_assets();
    std::vector<std::size_t> keep;
    std::set_intersection(price_full.begin(), price_full.end(),
                          cap_full.begin(), cap_full.end(), std::back_inserter(keep));
    if (keep.empty()) {
        throw ConfigError("no asset has full history in both panels");
    }
    return {prices.select_assets(keep), caps.select_assets(keep)};
}

CalendarMap build_calendar_map(const Panel& prices, const Panel& caps) {
    CalendarMap map;
    map.month_to_day.reserve(caps.rows());
    map.day_date.reserve(caps.rows());
    const auto& days = prices.dates();
    for (std::size_t t = 0; t < caps.rows(); ++t) {
        const Date& md = caps.dates()[t];
        // Last trading day <= month date.
        auto it = std::upper_bound(days.begin(), days.end(), md);
        if (it == days.begin()) {
            throw CalendarError("cap month " + md.iso() + " precedes the first trading day " +
                                days.front().iso());
        }
        if (md > days.back()) {
            throw CalendarError("cap month " + md.iso() + " is after the last trading day " +
                                days.back().iso());
        }
        std::size_t idx = static_cast<std::size_t>((it - days.begin()) - 1);
        if (!map.month_to_day.empty() && idx <= map.month_to_day.back()) {
            throw CalendarError("months " + caps.dates()[t - 1].iso() + " and " + md.iso() +
                                " map to the same trading day");
        }
        map.month_to_day.push_back(idx);
        map.day_date.push_back(days[idx]);
    }
    return map;
}

} // namespace capstruct

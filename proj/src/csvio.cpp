#include "capstruct/csvio.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include "capstruct/errors.hpp"

namespace capstruct {

namespace {

std::vector<std::string> split_line(const std::string& line) {
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

double parse_double(const std::string& field, std::size_t line, const std::string& origin) {
    double v = 0.0;
    auto res = std::from_chars(field.data(), field.data() + field.size(), v);
    if (res.ec != std::errc{} || res.ptr != field.data() + field.size()) {
        throw ParseError(origin + ":" + std::to_string(line) + ": cannot parse value '" +
                         field + "'");
    }
    return v;
}

} // namespace

std::string format_double(double v) {
    char buf[32];
    auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw ParseError("cannot open " + path);
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw ConfigError("cannot write " + path);
    }
    out << content;
}

std::string series_to_csv(const SeriesOutput& series) {
    std::string out = "date";
    for (const auto& name : series.names) {
        out += ',';
        out += name;
    }
    out += '\n';
    for (std::size_t r = 0; r < series.rows(); ++r) {
        out += series.index[r].iso();
        for (std::size_t c = 0; c < series.cols(); ++c) {
            out += ',';
            out += format_double(series.at(r, c));
        }
        out += '\n';
    }
    return out;
}

std::string matrix_to_csv(const DistanceMatrix& matrix) {
    std::string out = "date";
    for (const auto& label : matrix.labels) {
        out += ',';
        out += label;
    }
    out += '\n';
    for (std::size_t i = 0; i < matrix.size(); ++i) {
        out += matrix.labels[i];
        for (std::size_t j = 0; j < matrix.size(); ++j) {
            out += ',';
            out += format_double(matrix.at(i, j));
        }
        out += '\n';
    }
    return out;
}

DistanceMatrix matrix_from_csv(const std::string& text, const std::string& origin) {
    std::istringstream in(text);
    std::string line;
    if (!std::getline(in, line)) {
        throw ParseError(origin + ": empty file");
    }
    auto header = split_line(line);
    if (header.size() < 2) {
        throw ParseError(origin + ":1: matrix header needs at least one label");
    }
    DistanceMatrix m;
    m.labels.assign(header.begin() + 1, header.end());
    const std::size_t n = m.labels.size();
    m.entries.reserve(n * n);
    std::size_t lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty() || line == "\r") continue;
        auto fields = split_line(line);
        if (fields.size() != n + 1) {
            throw ParseError(origin + ":" + std::to_string(lineno) + ": expected " +
                             std::to_string(n + 1) + " fields");
        }
        for (std::size_t j = 0; j < n; ++j) {
            m.entries.push_back(parse_double(fields[j + 1], lineno, origin));
        }
    }
    if (m.entries.size() != n * n) {
        throw ParseError(origin + ": matrix row count does not match label count");
    }
    return m;
}

std::string weights_to_csv(const WeightTrajectories& traj) {
    std::string out = "date";
    for (const auto& a : traj.assets) {
        out += ',';
        out += a;
    }
    out += '\n';
    for (Eigen::Index r = 0; r < traj.weights.rows(); ++r) {
        out += traj.dates[static_cast<std::size_t>(r)].iso();
        for (Eigen::Index c = 0; c < traj.weights.cols(); ++c) {
            out += ',';
            out += format_double(traj.weights(r, c));
        }
        out += '\n';
    }
    return out;
}

WeightTrajectories weights_from_csv(const std::string& text, const std::string& origin) {
    std::istringstream in(text);
    std::string line;
    if (!std::getline(in, line)) {
        throw ParseError(origin + ": empty file");
    }
    auto header = split_line(line);
    if (header.empty() || header[0] != "date" || header.size() < 2) {
        throw ParseError(origin + ":1: expected 'date' plus asset columns");
    }
    WeightTrajectories traj;
    traj.assets.assign(header.begin() + 1, header.end());
    const std::size_t m = traj.assets.size();
    std::vector<double> values;
    std::size_t lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty() || line == "\r") continue;
        auto fields = split_line(line);
        if (fields.size() != m + 1) {
            throw ParseError(origin + ":" + std::to_string(lineno) + ": expected " +
                             std::to_string(m + 1) + " fields");
        }
        Date d = Date::parse(fields[0]);
        if (!traj.dates.empty() && !(traj.dates.back() < d)) {
            throw CalendarError(origin + ":" + std::to_string(lineno) +
                                ": dates not strictly increasing");
        }
        traj.dates.push_back(d);
        for (std::size_t c = 0; c < m; ++c) {
            values.push_back(parse_double(fields[c + 1], lineno, origin));
        }
    }
    if (traj.dates.empty()) {
        throw ParseError(origin + ": no weight rows");
    }
    traj.weights.resize(static_cast<Eigen::Index>(traj.dates.size()),
                        static_cast<Eigen::Index>(m));
    for (std::size_t r = 0; r < traj.dates.size(); ++r) {
        for (std::size_t c = 0; c < m; ++c) {
            traj.weights(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) =
                values[r * m + c];
        }
    }
    return traj;
}

std::string functionals_to_csv(const FunctionalSeries& series) {
    std::string out = "date,nu,nu_bar,mu,mu_bar,f,f_mu,g\n";
    for (std::size_t i = 0; i < series.size(); ++i) {
        out += series.months[i].iso();
        for (double v : {series.nu[i], series.nu_bar[i], series.mu[i], series.mu_bar[i],
                         series.f[i], series.f_mu[i], series.g[i]}) {
            out += ',';
            out += format_double(v);
        }
        out += '\n';
    }
    return out;
}

} // namespace capstruct

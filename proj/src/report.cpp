#include "cnea/report.hpp"

#include "cnea/trace_io.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

namespace cnea {

std::string format_table_value(double v) {
    if (std::isnan(v)) return "-";
    char buf[64];
    const double a = std::abs(v);
    if (a != 0.0 && (a < 1e-3 || a >= 1e6))
        std::snprintf(buf, sizeof buf, "%.3E", v);
    else
        std::snprintf(buf, sizeof buf, "%.4f", v);
    return buf;
}

namespace {

std::string pad(const std::string& s, std::size_t width) {
    return s.size() >= width ? s : std::string(width - s.size(), ' ') + s;
}

std::string pad_right(const std::string& s, std::size_t width) {
    return s.size() >= width ? s : s + std::string(width - s.size(), ' ');
}

std::string rank_label(std::size_t rank, std::size_t k, std::size_t n) {
    std::string label = ordinal(rank);
    if (k == 0) label += " (Best)";
    if (k == 2) label += " (Median)";
    if (k == 4 && n > 1) label += " (Worst)";
    return label;
}

// Renders a grid: first column labels, then one column per header entry.
std::string render_grid(const std::vector<std::string>& header, const std::vector<std::vector<std::string>>& rows) {
    std::vector<std::size_t> width(header.size(), 0);
    for (std::size_t c = 0; c < header.size(); ++c) width[c] = header[c].size();
    for (const auto& r : rows)
        for (std::size_t c = 0; c < r.size(); ++c) width[c] = std::max(width[c], r[c].size());
    std::ostringstream os;
    auto line = [&](const std::vector<std::string>& cells) {
        for (std::size_t c = 0; c < cells.size(); ++c) {
            if (c) os << "  ";
            os << (c == 0 ? pad_right(cells[c], width[c]) : pad(cells[c], width[c]));
        }
        os << '\n';
    };
    line(header);
    std::size_t total = 0;
    for (auto w : width) total += w;
    os << std::string(total + 2 * (width.size() - 1), '-') << '\n';
    for (const auto& r : rows) line(r);
    return os.str();
}

} // namespace

std::string render_summary_table(std::span<const CellResult> cells) {
    std::map<std::size_t, std::vector<const CellResult*>> by_n;
    for (const auto& c : cells)
        if (c.ok()) by_n[c.errors.size()].push_back(&c);
    std::ostringstream os;
    bool first = true;
    for (const auto& [n, group] : by_n) {
        if (!first) os << '\n';
        first = false;
        std::vector<std::string> header{"Runs=" + std::to_string(n)};
        std::vector<RunSummary> sums;
        for (const auto* c : group) {
            header.push_back(c->function + "_" + std::to_string(c->dim) + "D/" + c->algo);
            sums.push_back(c->summary());
        }
        const auto ranks = pick_ranks(n);
        std::vector<std::vector<std::string>> rows;
        for (std::size_t k = 0; k < 5; ++k) {
            std::vector<std::string> row{rank_label(ranks[k], k, n)};
            for (const auto& s : sums) row.push_back(format_table_value(s.picks[k]));
            rows.push_back(std::move(row));
        }
        std::vector<std::string> mean{"Mean"}, sd{"Std"};
        for (const auto& s : sums) {
            mean.push_back(format_table_value(s.mean));
            sd.push_back(format_table_value(s.std));
        }
        rows.push_back(std::move(mean));
        rows.push_back(std::move(sd));
        os << render_grid(header, rows);
    }
    return os.str();
}

nlohmann::json summary_json(std::span<const CellResult> cells) {
    auto arr = nlohmann::json::array();
    for (const auto& c : cells) {
        if (!c.ok()) continue;
        const auto s = c.summary();
        nlohmann::json j;
        j["algo"] = c.algo;
        j["function"] = c.function;
        j["dim"] = c.dim;
        j["runs"] = c.errors.size();
        j["ranks"] = s.ranks;
        j["picks"] = s.picks;
        j["mean"] = s.mean;
        j["std"] = s.std;
        j["mean_wall_ms"] = c.mean_wall_ms();
        const double sg = c.stagnation_gen_mean();
        j["stagnation_gen_mean"] = std::isnan(sg) ? nlohmann::json(nullptr) : nlohmann::json(sg);
        arr.push_back(std::move(j));
    }
    return arr;
}

std::string render_summary_csv(std::span<const CellResult> cells) {
    std::ostringstream os;
    os << kSummaryHeader << '\n';
    for (const auto& c : cells)
        if (c.ok()) os << summary_csv_row(c) << '\n';
    return os.str();
}

TTestRow ttest_cells(const CellResult& a, const CellResult& b) {
    if (a.errors.size() != b.errors.size())
        throw std::invalid_argument("cannot pair " + a.id() + " (" + std::to_string(a.errors.size()) + " runs) with " +
                                    b.id() + " (" + std::to_string(b.errors.size()) + " runs)");
    if (a.seeds != b.seeds) throw std::invalid_argument("cells " + a.id() + " and " + b.id() + " used different seeds");
    TTestRow row;
    row.function = a.function == b.function ? a.function : a.function + "|" + b.function;
    row.dim = a.dim;
    row.algo_a = a.algo;
    row.algo_b = b.algo;
    row.result = paired_ttest(a.errors, b.errors);
    return row;
}

std::vector<TTestRow> ttest_grid(std::span<const CellResult> cells, const std::string& reference) {
    std::vector<TTestRow> rows;
    for (const auto& ref : cells) {
        if (ref.algo != reference || !ref.ok()) continue;
        for (const auto& other : cells) {
            if (other.algo == reference || !other.ok()) continue;
            if (other.function != ref.function || other.dim != ref.dim) continue;
            rows.push_back(ttest_cells(ref, other));
        }
    }
    return rows;
}

std::string render_ttest_table(std::span<const TTestRow> rows) {
    // Rows: function_dim, columns: comparison, values: p.
    std::vector<std::string> columns;
    std::map<std::string, std::map<std::string, double>> grid;
    std::vector<std::string> row_order;
    for (const auto& r : rows) {
        const auto col = r.algo_a + " vs " + r.algo_b;
        if (std::find(columns.begin(), columns.end(), col) == columns.end()) columns.push_back(col);
        const auto key = r.function + "_" + std::to_string(r.dim) + "D";
        if (std::find(row_order.begin(), row_order.end(), key) == row_order.end()) row_order.push_back(key);
        grid[key][col] = r.result.p_value;
    }
    std::vector<std::string> header{"p-value"};
    header.insert(header.end(), columns.begin(), columns.end());
    std::vector<std::vector<std::string>> out;
    for (const auto& key : row_order) {
        std::vector<std::string> line{key};
        for (const auto& col : columns) {
            const auto it = grid[key].find(col);
            if (it == grid[key].end()) {
                line.emplace_back("-");
            } else {
                char buf[32];
                std::snprintf(buf, sizeof buf, "%.4f", it->second);
                line.emplace_back(buf);
            }
        }
        out.push_back(std::move(line));
    }
    return render_grid(header, out);
}

std::string render_ttest_csv(std::span<const TTestRow> rows) {
    std::ostringstream os;
    os << kTTestHeader << '\n';
    for (const auto& r : rows)
        os << r.function << ',' << r.dim << ',' << r.algo_a << ',' << r.algo_b << ','
           << format_real(r.result.t_statistic) << ',' << r.result.degrees_of_freedom << ','
           << format_real(r.result.p_value) << '\n';
    return os.str();
}

nlohmann::json ttest_json(std::span<const TTestRow> rows) {
    auto arr = nlohmann::json::array();
    for (const auto& r : rows) {
        nlohmann::json j;
        j["function"] = r.function;
        j["dim"] = r.dim;
        j["algo_a"] = r.algo_a;
        j["algo_b"] = r.algo_b;
        j["t"] = std::isfinite(r.result.t_statistic) ? nlohmann::json(r.result.t_statistic)
                                                     : nlohmann::json(format_real(r.result.t_statistic));
        j["df"] = r.result.degrees_of_freedom;
        j["p"] = r.result.p_value;
        arr.push_back(std::move(j));
    }
    return arr;
}

DiversityRow diversity_for_cell(const std::filesystem::path& cell_dir, const CellResult& cell,
                                double burn_in_fraction) {
    DiversityRow row;
    row.algo = cell.algo;
    row.function = cell.function;
    row.dim = cell.dim;
    std::vector<std::filesystem::path> files;
    for (const auto& e : std::filesystem::directory_iterator(cell_dir)) {
        const auto name = e.path().filename().string();
        if (e.is_regular_file() && name.starts_with("run_") && e.path().extension() == ".csv") files.push_back(e.path());
    }
    std::sort(files.begin(), files.end());
    double sum = 0.0;
    for (const auto& f : files) {
        const auto trace = read_trace_csv(f);
        ++row.runs;
        if (trace.records.empty()) continue;
        const auto budget = trace.last().generation;
        const auto burn = static_cast<std::size_t>(std::floor(burn_in_fraction * static_cast<double>(budget)));
        const auto profile = diversity_profile(trace, burn);
        if (profile.average_diversity) {
            sum += *profile.average_diversity;
            ++row.runs_counted;
        }
    }
    if (row.runs_counted > 0) row.average_diversity = sum / static_cast<double>(row.runs_counted);
    return row;
}

std::vector<DiversityRow> diversity_report(const std::filesystem::path& root, double burn_in_fraction) {
    if (!std::filesystem::is_directory(root)) throw std::runtime_error("not a directory: " + root.string());
    std::vector<std::filesystem::path> dirs;
    if (std::filesystem::exists(root / "cell.json")) dirs.push_back(root);
    for (const auto& e : std::filesystem::recursive_directory_iterator(root))
        if (e.is_regular_file() && e.path().filename() == "cell.json" && e.path().parent_path() != root)
            dirs.push_back(e.path().parent_path());
    std::sort(dirs.begin(), dirs.end());
    std::vector<DiversityRow> rows;
    for (const auto& d : dirs) rows.push_back(diversity_for_cell(d, read_cell(d), burn_in_fraction));
    return rows;
}

std::string render_diversity_table(std::span<const DiversityRow> rows) {
    std::set<std::size_t> dims;
    std::vector<std::string> keys;
    std::map<std::string, std::map<std::size_t, std::optional<double>>> grid;
    for (const auto& r : rows) {
        dims.insert(r.dim);
        const auto key = r.function + " (" + r.algo + ")";
        if (std::find(keys.begin(), keys.end(), key) == keys.end()) keys.push_back(key);
        grid[key][r.dim] = r.average_diversity;
    }
    std::vector<std::string> header{"Average diversity"};
    for (auto d : dims) header.push_back(std::to_string(d) + "D");
    std::vector<std::vector<std::string>> out;
    for (const auto& k : keys) {
        std::vector<std::string> line{k};
        for (auto d : dims) {
            const auto it = grid[k].find(d);
            if (it == grid[k].end() || !it->second) {
                line.emplace_back("-");
            } else {
                char buf[32];
                std::snprintf(buf, sizeof buf, "%.6f", *it->second);
                line.emplace_back(buf);
            }
        }
        out.push_back(std::move(line));
    }
    return render_grid(header, out);
}

std::string render_diversity_csv(std::span<const DiversityRow> rows) {
    std::ostringstream os;
    os << "algo,function,dim,runs,runs_counted,average_diversity\n";
    for (const auto& r : rows)
        os << r.algo << ',' << r.function << ',' << r.dim << ',' << r.runs << ',' << r.runs_counted << ','
           << (r.average_diversity ? format_real(*r.average_diversity) : std::string("nan")) << '\n';
    return os.str();
}

nlohmann::json diversity_json(std::span<const DiversityRow> rows) {
    auto arr = nlohmann::json::array();
    for (const auto& r : rows) {
        nlohmann::json j;
        j["algo"] = r.algo;
        j["function"] = r.function;
        j["dim"] = r.dim;
        j["runs"] = r.runs;
        j["runs_counted"] = r.runs_counted;
        j["average_diversity"] = r.average_diversity ? nlohmann::json(*r.average_diversity) : nlohmann::json(nullptr);
        arr.push_back(std::move(j));
    }
    return arr;
}

} // namespace cnea

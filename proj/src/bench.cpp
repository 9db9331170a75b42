#include "mpt/bench.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <chrono>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>
#include <thread>

#include "mpt/krylov.hpp"
#include "mpt/precond.hpp"
#include "mpt/transform.hpp"

namespace mpt {

std::string_view to_string(Formulation f) {
    return f == Formulation::standard ? "standard" : "transformed";
}

Formulation parse_formulation(std::string_view text) {
    if (text == "standard") return Formulation::standard;
    if (text == "transformed") return Formulation::transformed;
    throw std::invalid_argument("unknown formulation '" + std::string(text) + "'");
}

Discretization make_discretization(int n) {
    Discretization d;
    d.mesh = build_unit_square_mesh(n);
    d.dofs = make_interior_dof_map(d.mesh);
    if (d.dofs.size() == 0) {
        throw std::invalid_argument("mesh with n = " + std::to_string(n) + " has no interior dofs");
    }
    d.stiffness = std::make_shared<const SparseMatrix>(assemble_stiffness(d.mesh, d.dofs));
    d.mass = std::make_shared<const SparseMatrix>(assemble_mass(d.mesh, d.dofs));
    return d;
}

void SweepConfig::validate() const {
    if (j_count == 0) throw std::invalid_argument("sweep: need at least one network");
    if (k_values.size() != j_count) throw std::invalid_argument("sweep: need one K list per network");
    for (const auto& ks : k_values) {
        if (ks.empty()) throw std::invalid_argument("sweep: empty K list");
        for (double k : ks)
            if (!(k > 0.0)) throw std::invalid_argument("sweep: K values must be positive");
    }
    for (std::size_t a = 0; a < xi_values.size(); ++a) {
        const auto& p = xi_values[a];
        if (p.i >= p.j || p.j >= j_count) throw std::invalid_argument("sweep: invalid exchange pair");
        if (p.values.empty()) throw std::invalid_argument("sweep: empty exchange list");
        for (double v : p.values)
            if (!(v >= 0.0)) throw std::invalid_argument("sweep: exchange values must be nonnegative");
        for (std::size_t b = 0; b < a; ++b)
            if (xi_values[b].i == p.i && xi_values[b].j == p.j)
                throw std::invalid_argument("sweep: duplicate exchange pair");
    }
    if (n_values.empty()) throw std::invalid_argument("sweep: empty N list");
    for (int n : n_values)
        if (n < 2) throw std::invalid_argument("sweep: N must be >= 2");
    if (!(tolerance > 0.0)) throw std::invalid_argument("sweep: tolerance must be positive");
    if (max_iterations == 0) throw std::invalid_argument("sweep: max_iterations must be positive");
}

std::size_t SweepConfig::size() const {
    std::size_t count = n_values.size();
    for (const auto& ks : k_values) count *= ks.size();
    for (const auto& p : xi_values) count *= p.values.size();
    return count;
}

namespace {

// Mixed-radix enumeration, last digit fastest.
template <class Visit>
void for_each_index(const std::vector<std::size_t>& radix, Visit&& visit) {
    std::vector<std::size_t> idx(radix.size(), 0);
    for (std::size_t r : radix)
        if (r == 0) return;
    while (true) {
        visit(idx);
        std::size_t d = radix.size();
        while (d > 0) {
            --d;
            if (++idx[d] < radix[d]) break;
            idx[d] = 0;
            if (d == 0) return;
        }
        if (radix.empty()) return;
    }
}

}  // namespace

std::vector<SweepPoint> expand_sweep(const SweepConfig& config) {
    config.validate();
    std::vector<std::size_t> radix;
    for (const auto& p : config.xi_values) radix.push_back(p.values.size());
    for (const auto& ks : config.k_values) radix.push_back(ks.size());
    radix.push_back(config.n_values.size());

    std::vector<SweepPoint> points;
    points.reserve(config.size());
    const std::size_t npairs = config.xi_values.size();
    for_each_index(radix, [&](const std::vector<std::size_t>& idx) {
        NetworkParams params;
        params.j_count = config.j_count;
        params.xi = DenseMatrix(config.j_count, config.j_count);
        for (std::size_t a = 0; a < npairs; ++a) {
            const auto& p = config.xi_values[a];
            params.xi(p.i, p.j) = params.xi(p.j, p.i) = p.values[idx[a]];
        }
        for (std::size_t j = 0; j < config.j_count; ++j) params.k.push_back(config.k_values[j][idx[npairs + j]]);
        params.validate();
        const int n = config.n_values[idx.back()];
        points.push_back({std::move(params), n, config.seed + points.size()});
    });
    return points;
}

NetworkParams RunRecord::params() const {
    NetworkParams p;
    p.j_count = j_count;
    p.k = k;
    p.xi = DenseMatrix(j_count, j_count);
    for (const auto& e : xi) p.xi(e.i, e.j) = p.xi(e.j, e.i) = e.value;
    p.validate();
    return p;
}

double RunRecord::xi_sum() const {
    double s = 0.0;
    for (const auto& e : xi) s += e.value;
    return s;
}

double RunRecord::k_sum() const {
    double s = 0.0;
    for (double v : k) s += v;
    return s;
}

RunRecord run_point(const Discretization& disc, const NetworkParams& params, Formulation formulation,
                    double tolerance, std::size_t max_iterations, std::uint64_t seed) {
    params.validate();
    const auto start = std::chrono::steady_clock::now();
    CgOptions options;
    options.tolerance = tolerance;
    options.max_iterations = max_iterations;
    const std::vector<double> rhs(params.j_count * disc.dofs.size(), 0.0);

    PcgResult result;
    if (formulation == Formulation::standard) {
        const auto op = assemble_standard(params, disc.stiffness, disc.mass);
        const auto pre = build_standard_precond(params, disc.stiffness, disc.mass);
        result = pcg_random_start(op, pre, rhs, seed, options);
    } else {
        const auto ct = diagonalize_by_congruence(params);
        const auto op = assemble_transformed(ct, disc.stiffness, disc.mass);
        const auto pre = build_transformed_precond(ct, disc.stiffness, disc.mass);
        result = pcg_random_start(op, pre, transform_rhs(ct, rhs), seed, options);
    }
    const auto stop = std::chrono::steady_clock::now();

    RunRecord rec;
    rec.j_count = params.j_count;
    rec.n = disc.mesh.n;
    rec.formulation = formulation;
    rec.k = params.k;
    for (std::size_t i = 0; i < params.j_count; ++i)
        for (std::size_t j = i + 1; j < params.j_count; ++j) rec.xi.push_back({i, j, params.xi(i, j)});
    const auto& rep = result.report;
    const bool capped = !rep.converged && !rep.breakdown;
    rec.iterations = capped ? max_iterations + 1 : rep.iterations;
    rec.converged = rep.converged;
    rec.cond_est = rep.cond_est;
    rec.lambda_min = rep.lambda_min_est;
    rec.lambda_max = rep.lambda_max_est;
    rec.seed = seed;
    rec.wall_time_s = std::chrono::duration<double>(stop - start).count();
    return rec;
}

std::vector<RunRecord> run_sweep(const SweepConfig& config) {
    const auto points = expand_sweep(config);
    std::map<int, Discretization> discs;
    for (int n : config.n_values)
        if (!discs.contains(n)) discs.emplace(n, make_discretization(n));

    std::vector<RunRecord> records(points.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t k = next++; k < points.size(); k = next++) {
            const auto& pt = points[k];
            records[k] = run_point(discs.at(pt.n), pt.params, config.formulation, config.tolerance,
                                   config.max_iterations, pt.seed);
        }
    };
    const unsigned nthreads = std::max(1u, std::min<unsigned>(config.threads, static_cast<unsigned>(points.size())));
    if (nthreads == 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        for (unsigned t = 0; t < nthreads; ++t) pool.emplace_back(worker);
    }
    return records;
}

std::string format_number(double v) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

std::string csv_header(std::size_t j_count) {
    std::string h = "J,N,formulation";
    for (std::size_t j = 1; j <= j_count; ++j) h += ",K" + std::to_string(j);
    h += ",xi_pairs,iterations,converged,cond_est,lambda_min,lambda_max,seed,wall_time_s";
    return h;
}

namespace {

std::string format_xi_pairs(const std::vector<XiEntry>& xi) {
    std::string s;
    for (const auto& e : xi) {
        if (!s.empty()) s += ';';
        s += std::to_string(e.i + 1) + "-" + std::to_string(e.j + 1) + "=" + format_number(e.value);
    }
    return s;
}

std::vector<std::string> split(std::string_view s, char sep) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (true) {
        const auto pos = s.find(sep, start);
        out.emplace_back(s.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
        if (pos == std::string_view::npos) break;
        start = pos + 1;
    }
    return out;
}

double parse_double(std::string_view s) {
    double v = 0.0;
    const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    if (res.ec != std::errc() || res.ptr != s.data() + s.size()) {
        throw std::invalid_argument("CSV: malformed number '" + std::string(s) + "'");
    }
    return v;
}

template <class Int>
Int parse_int(std::string_view s) {
    Int v = 0;
    const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    if (res.ec != std::errc() || res.ptr != s.data() + s.size()) {
        throw std::invalid_argument("CSV: malformed integer '" + std::string(s) + "'");
    }
    return v;
}

}  // namespace

void write_csv(std::ostream& out, const std::vector<RunRecord>& records, std::optional<std::size_t> j_count) {
    const std::size_t J = j_count.value_or(records.empty() ? 1 : records.front().j_count);
    out << csv_header(J) << '\n';
    for (const auto& r : records) {
        if (r.j_count != J || r.k.size() != J) throw std::invalid_argument("write_csv: mixed network counts");
        out << r.j_count << ',' << r.n << ',' << to_string(r.formulation);
        for (double k : r.k) out << ',' << format_number(k);
        out << ',' << format_xi_pairs(r.xi) << ',' << r.iterations << ',' << (r.converged ? 1 : 0) << ','
            << format_number(r.cond_est) << ',' << format_number(r.lambda_min) << ','
            << format_number(r.lambda_max) << ',' << r.seed << ',' << format_number(r.wall_time_s) << '\n';
    }
}

void emit_csv(const std::vector<RunRecord>& records, const std::string& path, std::optional<std::size_t> j_count) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open '" + path + "' for writing");
    write_csv(out, records, j_count);
    out.flush();
    if (!out) throw IoError("write to '" + path + "' failed");
}

std::vector<RunRecord> read_csv(std::istream& in) {
    std::string line;
    if (!std::getline(in, line)) throw std::invalid_argument("CSV: missing header");
    const auto head = split(line, ',');
    std::size_t J = 0;
    for (const auto& h : head)
        if (h.size() > 1 && h[0] == 'K') ++J;
    if (line != csv_header(J)) throw std::invalid_argument("CSV: unexpected header '" + line + "'");
    const std::size_t ncols = head.size();

    std::vector<RunRecord> records;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        const auto f = split(line, ',');
        if (f.size() != ncols) throw std::invalid_argument("CSV: wrong field count in '" + line + "'");
        RunRecord r;
        std::size_t c = 0;
        r.j_count = parse_int<std::size_t>(f[c++]);
        if (r.j_count != J) throw std::invalid_argument("CSV: J column disagrees with header");
        r.n = parse_int<int>(f[c++]);
        r.formulation = parse_formulation(f[c++]);
        for (std::size_t j = 0; j < J; ++j) r.k.push_back(parse_double(f[c++]));
        const std::string& pairs = f[c++];
        if (!pairs.empty()) {
            for (const auto& tok : split(pairs, ';')) {
                const auto eq = tok.find('=');
                const auto dash = tok.find('-');
                if (eq == std::string::npos || dash == std::string::npos || dash > eq) {
                    throw std::invalid_argument("CSV: malformed exchange entry '" + tok + "'");
                }
                const auto i = parse_int<std::size_t>(std::string_view(tok).substr(0, dash));
                const auto j = parse_int<std::size_t>(std::string_view(tok).substr(dash + 1, eq - dash - 1));
                if (i == 0 || j == 0 || i >= j || j > J) {
                    throw std::invalid_argument("CSV: invalid exchange pair '" + tok + "'");
                }
                r.xi.push_back({i - 1, j - 1, parse_double(std::string_view(tok).substr(eq + 1))});
            }
        }
        r.iterations = parse_int<std::size_t>(f[c++]);
        r.converged = parse_int<int>(f[c++]) != 0;
        r.cond_est = parse_double(f[c++]);
        r.lambda_min = parse_double(f[c++]);
        r.lambda_max = parse_double(f[c++]);
        r.seed = parse_int<std::uint64_t>(f[c++]);
        r.wall_time_s = parse_double(f[c++]);
        records.push_back(std::move(r));
    }
    return records;
}

std::vector<RunRecord> read_csv(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open '" + path + "' for reading");
    return read_csv(in);
}

double record_field(const RunRecord& r, std::string_view field) {
    if (field == "J") return static_cast<double>(r.j_count);
    if (field == "N") return r.n;
    if (field == "iterations") return static_cast<double>(r.iterations);
    if (field == "converged") return r.converged ? 1.0 : 0.0;
    if (field == "cond_est") return r.cond_est;
    if (field == "lambda_min") return r.lambda_min;
    if (field == "lambda_max") return r.lambda_max;
    if (field == "seed") return static_cast<double>(r.seed);
    if (field == "wall_time_s") return r.wall_time_s;
    if (field == "xi_sum") return r.xi_sum();
    if (field == "k_sum") return r.k_sum();
    if (field == "xi_k_ratio") return r.xi_sum() / r.k_sum();
    if (field.size() > 1 && field[0] == 'K') {
        std::size_t j = 0;
        const auto res = std::from_chars(field.data() + 1, field.data() + field.size(), j);
        if (res.ec == std::errc() && res.ptr == field.data() + field.size() && j >= 1 && j <= r.k.size()) {
            return r.k[j - 1];
        }
    }
    if (field.starts_with("xi_")) {
        for (const auto& e : r.xi) {
            if (field.substr(3) == std::to_string(e.i + 1) + "-" + std::to_string(e.j + 1)) return e.value;
        }
    }
    throw std::invalid_argument("unknown record field '" + std::string(field) + "'");
}

}  // namespace mpt

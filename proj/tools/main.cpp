#include <CLI11.hpp>
#include <cstdlib>
#include <filesystem>
#include <iostream>

#include "fw/json_io.hpp"

using namespace fw;

namespace {

struct CliOptions {
    RunConfig cfg;
    std::string format = "json";
    std::string cache_dir;
};

// "m:r[:a0,a1,...]" with extra comma-separated factors allowed in one flag:
// a token containing ':' starts a new factor, bare tokens extend coefficients
std::vector<FactorSpec> parse_factors(const std::vector<std::string>& raw) {
    std::vector<FactorSpec> out;
    for (const std::string& chunk : raw) {
        std::stringstream ss(chunk);
        std::string tok;
        while (std::getline(ss, tok, ',')) {
            if (tok.empty()) throw domain_error("empty factor token");
            if (tok.find(':') != std::string::npos) {
                FactorSpec fs;
                std::stringstream fs_ss(tok);
                std::string part;
                int idx = 0;
                while (std::getline(fs_ss, part, ':')) {
                    if (part.empty()) throw domain_error("malformed factor " + tok);
                    unsigned long v = std::stoul(part);
                    if (idx == 0) fs.m = unsigned(v);
                    else if (idx == 1) fs.r = unsigned(v);
                    else fs.a.a.push_back(std::uint32_t(v));
                    ++idx;
                }
                if (idx < 2) throw domain_error("factor needs m:r");
                out.push_back(std::move(fs));
            } else {
                if (out.empty() || out.back().a.a.empty())
                    throw domain_error("coefficient token before any m:r:a0 factor");
                out.back().a.a.push_back(std::uint32_t(std::stoul(tok)));
            }
        }
    }
    if (out.empty()) throw domain_error("at least one factor required");
    return out;
}

std::vector<unsigned> parse_uint_list(const std::string& s) {
    std::vector<unsigned> out;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ',')) out.push_back(unsigned(std::stoul(tok)));
    return out;
}

FieldTable obtain_field(std::uint64_t p, unsigned f, const CliOptions& opt) {
    std::string dir = opt.cache_dir;
    if (const char* env = std::getenv("FERMAT_WEIL_CACHE"); env && dir.empty()) dir = env;
    if (!dir.empty()) {
        std::filesystem::create_directories(dir);
        std::string path =
            dir + "/field_" + std::to_string(p) + "_" + std::to_string(f) + ".fwt";
        if (auto cached = load_field_cache(path)) return std::move(*cached);
        FieldTable t = build_field(p, f, opt.cfg);
        save_field_cache(t, path);
        return t;
    }
    return build_field(p, f, opt.cfg);
}

Spectrum factor_product_spectrum(const std::vector<FactorSpec>& factors, const FieldTable& t,
                                 const RunConfig& cfg) {
    std::vector<Spectrum> parts;
    for (const FactorSpec& fs : factors)
        parts.push_back(hypersurface_spectrum(fs.m, fs.r, fs.a, t, cfg));
    return product_spectrum(parts);
}

void emit(const json& j, const CliOptions& opt) {
    if (opt.format == "pretty") std::cout << j.dump(2) << "\n";
    else std::cout << j.dump() << "\n";
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Frobenius eigenvalues, zeta functions and Tate classes of diagonal "
                 "hypersurfaces over finite fields"};
    app.require_subcommand(1);

    CliOptions opt;
    app.add_option("--threads", opt.cfg.threads, "worker thread hint");
    app.add_option("--format", opt.format, "json | pretty | csv")
        ->check(CLI::IsMember({"json", "pretty", "csv"}));
    app.add_option("--cache-dir", opt.cache_dir, "field table cache directory");
    app.add_option("--max-q", opt.cfg.max_q, "field size budget");
    app.add_option("--max-enum", opt.cfg.max_enum, "tuple enumeration budget");
    app.add_option("--max-ops", opt.cfg.max_ops, "summation work budget");

    std::uint64_t p = 0;
    unsigned f = 1, r = 1, m = 1, i = 0, n = 1;
    std::vector<std::string> factor_raw;
    std::string gamma_str, ms_str, rs_str;
    bool stable = false, verify = false, direct = false;
    int case_no = 2;

    auto* c_field = app.add_subcommand("field", "build GF(p^f) and report its parameters");
    c_field->add_option("-p", p)->required();
    c_field->add_option("-f", f);

    auto* c_tuples = app.add_subcommand("tuples", "enumerate the middle-cohomology index set");
    c_tuples->add_option("-m", m)->required();
    c_tuples->add_option("-r", r)->required();

    auto* c_jacobi = app.add_subcommand("jacobi", "Jacobi sum of one exponent tuple");
    c_jacobi->add_option("-p", p)->required();
    c_jacobi->add_option("-f", f);
    c_jacobi->add_option("-m", m)->required();
    c_jacobi->add_option("-g,--gamma", gamma_str, "comma-separated entries")->required();
    c_jacobi->add_flag("--direct", direct, "force direct summation");

    auto* c_spec = app.add_subcommand("spectrum", "Frobenius spectrum of a product");
    auto* c_count = app.add_subcommand("count", "point count via the trace formula");
    auto* c_zeta = app.add_subcommand("zeta", "zeta function as factored polynomials");
    auto* c_tdim = app.add_subcommand("tatedim", "Tate class dimension at a twist");
    auto* c_oracle = app.add_subcommand("oracle", "brute-force point count");
    for (auto* c : {c_spec, c_count, c_zeta, c_tdim, c_oracle}) {
        c->add_option("-p", p)->required();
        c->add_option("-f", f);
        c->add_option("-X,--factors", factor_raw, "factors m:r[:a0,a1,...]")->required();
    }
    c_count->add_option("-n", n);
    c_count->add_flag("--verify", verify, "also run the brute-force oracle and compare");
    c_oracle->add_option("-n", n);
    c_tdim->add_option("-i", i)->required();
    c_tdim->add_flag("--stable", stable);

    auto* c_formula = app.add_subcommand("formula", "closed-form Tate dimension");
    c_formula->add_option("--case", case_no)->check(CLI::IsMember({2, 3}));
    c_formula->add_option("-p", p);
    c_formula->add_option("-f", f);
    c_formula->add_option("--ms", ms_str, "comma-separated m_j (case 3)");
    c_formula->add_option("--rs", rs_str, "comma-separated r_j")->required();
    c_formula->add_option("-i", i)->required();

    auto* c_sb = app.add_subcommand("stableB", "stable middle Tate classes by the norm criterion");
    c_sb->add_option("-m", m)->required();
    c_sb->add_option("-r", r)->required();
    c_sb->add_option("-p", p)->required();

    auto* c_check = app.add_subcommand("check", "evaluate the theorem hypotheses");
    c_check->add_option("-p", p)->required();
    c_check->add_option("-X,--factors", factor_raw, "factors m:r")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (*c_field) {
            FieldTable t = obtain_field(p, f, opt);
            json j{{"p", t.p()}, {"f", t.f()}, {"q", t.q()}, {"generator", t.generator()}};
            if (!t.modulus().empty()) j["modulus"] = t.modulus();
            emit(j, opt);
        } else if (*c_tuples) {
            json arr = json::array();
            for_each_exponent_tuple(m, r, opt.cfg,
                                    [&](const ExponentTuple& g) { arr.push_back(g.e); });
            emit(json{{"m", m}, {"r", r}, {"count", arr.size()}, {"tuples", arr}}, opt);
        } else if (*c_jacobi) {
            FieldTable t = obtain_field(p, f, opt);
            std::vector<unsigned> entries = parse_uint_list(gamma_str);
            ExponentTuple g{m, entries};
            g.validate();
            CycInt val = direct ? jacobi_direct(t, g, opt.cfg) : jacobi_fast(t, g, opt.cfg);
            emit(json{{"gamma", entries}, {"jacobi", val.str()}}, opt);
        } else if (*c_spec) {
            FieldTable t = obtain_field(p, f, opt);
            emit(to_json(factor_product_spectrum(parse_factors(factor_raw), t, opt.cfg)), opt);
        } else if (*c_count) {
            FieldTable t = obtain_field(p, f, opt);
            auto factors = parse_factors(factor_raw);
            Int cnt = point_count(factor_product_spectrum(factors, t, opt.cfg), n, opt.cfg);
            json j{{"n", n}, {"count", cnt.str()}};
            if (verify) {
                Int oracle = brute_force_count(factors, t, n, opt.cfg);
                j["oracle"] = oracle.str();
                j["match"] = oracle == cnt;
                if (oracle != cnt) {
                    emit(j, opt);
                    return 1;
                }
            }
            emit(j, opt);
        } else if (*c_oracle) {
            FieldTable t = obtain_field(p, f, opt);
            Int cnt = brute_force_count(parse_factors(factor_raw), t, n, opt.cfg);
            emit(json{{"n", n}, {"count", cnt.str()}}, opt);
        } else if (*c_zeta) {
            FieldTable t = obtain_field(p, f, opt);
            emit(to_json(zeta_rational(factor_product_spectrum(parse_factors(factor_raw), t,
                                                               opt.cfg))),
                 opt);
        } else if (*c_tdim) {
            FieldTable t = obtain_field(p, f, opt);
            Spectrum s = factor_product_spectrum(parse_factors(factor_raw), t, opt.cfg);
            if (stable) {
                StableDim sd = tate_dim_stable(s, i);
                emit(json{{"i", i}, {"dim", sd.dimension}, {"extension", sd.extension}}, opt);
            } else {
                emit(json{{"i", i}, {"dim", tate_dim_exact(s, i)}}, opt);
            }
        } else if (*c_formula) {
            std::vector<unsigned> rs = parse_uint_list(rs_str);
            if (case_no == 2) {
                long long dim = dim_case2(rs, i, false, opt.cfg);
                if (opt.format == "csv") std::cout << i << "," << dim << "\n";
                else emit(json{{"case", 2}, {"i", i}, {"dim", dim}}, opt);
            } else {
                if (ms_str.empty() || p == 0)
                    throw domain_error("case 3 needs --ms and -p (middle dimensions)");
                std::vector<unsigned> ms = parse_uint_list(ms_str);
                if (ms.size() != rs.size()) throw domain_error("ms and rs length mismatch");
                FieldTable t = obtain_field(p, f, opt);
                std::map<std::size_t, long long> middle;
                for (std::size_t j = 0; j < ms.size(); ++j)
                    middle[j] =
                        middle_tate_dim_exact(ms[j], rs[j], Coefficients::ones(rs[j]), t, opt.cfg);
                long long dim = dim_case3(rs, i, middle, opt.cfg);
                if (opt.format == "csv") std::cout << i << "," << dim << "\n";
                else emit(json{{"case", 3}, {"i", i}, {"dim", dim}}, opt);
            }
        } else if (*c_sb) {
            json arr = json::array();
            for (const ExponentTuple& g : stable_B(m, r, p, opt.cfg)) arr.push_back(g.e);
            emit(json{{"m", m}, {"r", r}, {"p", p}, {"count", arr.size()}, {"tuples", arr}}, opt);
        } else if (*c_check) {
            std::vector<std::pair<unsigned, unsigned>> factors;
            for (const FactorSpec& fs : parse_factors(factor_raw))
                factors.emplace_back(fs.m, fs.r);
            emit(to_json(hypothesis_check(p, factors, opt.cfg)), opt);
        }
    } catch (const budget_error& e) {
        std::cout << json{{"error", "budget"}, {"detail", e.what()}}.dump() << "\n";
        return 3;
    } catch (const domain_error& e) {
        std::cout << json{{"error", "precondition"}, {"detail", e.what()}}.dump() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cout << json{{"error", "internal"}, {"detail", e.what()}}.dump() << "\n";
        return 4;
    }
    return 0;
}

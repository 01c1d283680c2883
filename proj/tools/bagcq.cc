#include <bagcq/encoder.hh>
#include <bagcq/error.hh>
#include <bagcq/formats.hh>
#include <bagcq/gadgets.hh>
#include <bagcq/harness.hh>
#include <bagcq/homcount.hh>
#include <bagcq/polyreduce.hh>
#include <bagcq/qalgebra.hh>

#include <CLI11.hpp>

#include <cstdlib>
#include <iostream>

using namespace bagcq;

using std::cerr;
using std::cout;
using std::endl;
using std::string;
using std::vector;

namespace fs = std::filesystem;

namespace
{
    auto load_expr(const fs::path & p) -> QueryExpr
    {
        if (p.extension() == ".qx")
            return parse_query_expr(read_file(p), p.parent_path());
        return QueryExpr::leaf(parse_query(read_file(p)));
    }

    auto first_existing(const fs::path & dir, vector<string> names) -> fs::path
    {
        for (auto & n : names)
            if (fs::exists(dir / n))
                return dir / n;
        throw Error(ErrorKind::Io, "none of " + names.front() + "... found in " + dir.string());
    }

    auto print_count(const Count & c) -> void
    {
        cout << c.to_string() << endl;
        if (auto n = c.to_natural(256))
            cout << n->get_str() << endl;
    }

    auto emit(const string & text, const string & out) -> void
    {
        if (out.empty())
            cout << text;
        else
            write_file(out, text);
    }

    auto parse_rational(const string & s) -> Rational
    {
        Rational r;
        if (r.set_str(s, 10) != 0)
            throw Error(ErrorKind::Parse, "bad rational '" + s + "'");
        r.canonicalize();
        return r;
    }
}

auto main(int argc, char * argv[]) -> int
{
    CLI::App app{"Bag-semantics conjunctive query containment toolkit"};
    app.require_subcommand(1);

    string query_file, db_file, db_file2, poly_file, dir, out, suite = "all", multiplier;
    long param = 3;
    unsigned long trials = 200, k = 2;
    std::uint64_t seed = 1;
    std::size_t max_domain = 3;
    bool exhaustive = false;
    vector<string> suite_params;

    auto eval = app.add_subcommand("eval", "count homomorphisms of a query (.cq or .qx) into a database");
    eval->add_option("-q,--query", query_file)->required();
    eval->add_option("-d,--database", db_file)->required();

    auto reduce = app.add_subcommand("reduce", "normalize a polynomial and write the encoded query pair");
    reduce->add_option("-p,--polynomial", poly_file)->required();
    reduce->add_option("-o,--output", dir)->required();

    auto gadget = app.add_subcommand("gadget", "write a multiplication gadget and its witness");
    string gadget_kind;
    gadget->add_option("kind", gadget_kind)->required()->check(CLI::IsMember({"beta", "gamma", "alpha"}));
    gadget->add_option("--param", param)->required();
    gadget->add_option("-o,--output", dir)->required();

    auto classify = app.add_subcommand("classify", "classify a database against an encoded instance");
    classify->add_option("-d,--database", db_file)->required();
    classify->add_option("-i,--input", dir)->required();

    auto verify = app.add_subcommand("verify", "run a verification suite");
    verify->add_option("--suite", suite);
    verify->add_option("--trials", trials);
    verify->add_option("--seed", seed);
    verify->add_option("--param", suite_params, "key=value");

    auto search = app.add_subcommand("search", "look for a database refuting a query pair");
    search->add_option("-i,--input", dir)->required();
    search->add_option("--max-domain", max_domain);
    search->add_option("--trials", trials);
    search->add_option("--seed", seed);
    search->add_flag("--exhaustive", exhaustive);
    search->add_option("--multiplier", multiplier, "declared multiplier for a gadget directory");

    auto transform = app.add_subcommand("transform", "structure and query transformations");
    transform->require_subcommand(1);
    auto strip = transform->add_subcommand("strip-neq", "drop inequalities from a query");
    strip->add_option("-q,--query", query_file)->required();
    strip->add_option("-o,--output", out);
    auto blow = transform->add_subcommand("blowup", "k copies of every element");
    blow->add_option("-d,--database", db_file)->required();
    blow->add_option("-k", k)->required();
    blow->add_option("-o,--output", out);
    auto prod = transform->add_subcommand("product", "tensor product of two databases, or a k-th power");
    prod->add_option("-d,--database", db_file)->required();
    prod->add_option("-e,--other", db_file2);
    prod->add_option("-k", k);
    prod->add_option("-o,--output", out);

    try {
        app.parse(argc, argv);
    }
    catch (const CLI::ParseError & e) {
        auto code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (eval->parsed()) {
            print_count(load_expr(query_file).eval(parse_database(read_file(db_file))));
            return EXIT_SUCCESS;
        }

        if (reduce->parsed()) {
            auto inst = normalize_hilbert(parse_polynomial(read_file(poly_file)));
            auto problems = validate_instance(inst);
            for (auto & p : problems)
                cerr << "invalid instance: " << p << endl;
            if (! problems.empty())
                return 1;
            auto output = assemble(inst);
            write_encoder_output(dir, inst, output);
            cout << "P_s = " << inst.p_s.to_string() << endl;
            cout << "P_b = " << inst.p_b.to_string() << endl;
            cout << "c_frak = " << inst.c_frak.get_str() << ", d = " << inst.d << ", k = " << output.constants.k.get_str()
                 << endl;
            cout << "c = " << output.c.to_string() << endl;
            return EXIT_SUCCESS;
        }

        if (gadget->parsed()) {
            auto p = int(param);
            GadgetPair g = gadget_kind == "beta" ? build_beta(p) : gadget_kind == "gamma" ? build_gamma(p) : build_alpha(p);
            Database w = gadget_kind == "beta" ? beta_witness(p) : gadget_kind == "gamma" ? gamma_witness(p) : alpha_witness(p);
            fs::create_directories(dir);
            write_file(fs::path(dir) / "q_s.cq", serialize_query(g.q_s));
            write_file(fs::path(dir) / "q_b.cq", serialize_query(g.q_b));
            write_file(fs::path(dir) / "multiplier.txt", g.multiplier.get_str() + "\n");
            write_file(fs::path(dir) / "witness.db", serialize_database(w));
            cout << "multiplier " << g.multiplier.get_str() << ", witness q_s = " << count_homomorphisms(g.q_s, w).to_string()
                 << ", q_b = " << count_homomorphisms(g.q_b, w).to_string() << endl;
            return EXIT_SUCCESS;
        }

        if (classify->parsed()) {
            auto inst = parse_instance(read_file(fs::path(dir) / "instance.poly.json-lines"));
            auto d = parse_database(read_file(db_file));
            auto c = classify_database(d, inst);
            cout << classification_name(c) << endl;
            if (c != DbClassification::NotModel)
                for (auto & [i, v] : extract_valuation(d, inst))
                    cout << "x" << i << " = " << v.get_str() << endl;
            return EXIT_SUCCESS;
        }

        if (verify->parsed()) {
            SuiteParams params;
            for (auto & kv : suite_params) {
                auto eq = kv.find('=');
                if (eq == string::npos)
                    throw Error(ErrorKind::Parse, "--param takes key=value");
                params[kv.substr(0, eq)] = std::stol(kv.substr(eq + 1));
            }
            auto names = suite == "all" ? suite_names() : vector<string>{suite};
            bool ok = true;
            for (auto & name : names) {
                auto report = run_suite(name, params, trials, seed);
                cout << (report.ok() ? "PASS " : "FAIL ") << name << " trials=" << report.trials
                     << " failures=" << report.failures.size() << " time=" << report.wall_seconds << "s" << endl;
                for (auto & f : report.failures) {
                    cout << "  seed " << f.seed << ": " << f.detail << endl;
                    if (! f.witness.empty())
                        cout << f.witness;
                }
                ok = ok && report.ok();
            }
            return ok ? EXIT_SUCCESS : 1;
        }

        if (search->parsed()) {
            fs::path in{dir};
            Count lhs{1}, rhs{1};
            QueryExpr phi_s = QueryExpr::leaf(Query{}), phi_b = QueryExpr::leaf(Query{});
            if (fs::exists(in / "multiplier.txt")) {
                auto m = parse_rational(multiplier.empty() ? read_file(in / "multiplier.txt") : multiplier);
                phi_s = load_expr(in / "q_s.cq");
                phi_b = load_expr(in / "q_b.cq");
                lhs = Count(Natural(m.get_den()));
                rhs = Count(Natural(m.get_num()));
            }
            else {
                lhs = multiplier.empty() ? parse_count(read_file(in / "c.count")) : Count::parse(multiplier);
                phi_s = load_expr(first_existing(in, {"phi_s.cq", "phi_s.qx"}));
                phi_b = load_expr(first_existing(in, {"phi_b.qx", "phi_b.cq"}));
            }
            SearchConfig cfg;
            if (fs::exists(in / "witness.db"))
                cfg.seeds.push_back(parse_database(read_file(in / "witness.db")));
            cfg.max_domain = max_domain;
            cfg.trials = trials;
            cfg.seed = seed;
            cfg.mode = exhaustive ? SearchMode::Exhaustive : SearchMode::Random;
            if (auto d = search_counterexample(lhs, phi_s, phi_b, cfg, rhs)) {
                cout << "# counterexample" << endl << serialize_database(*d);
                return 1;
            }
            cout << "no counterexample found" << endl;
            return EXIT_SUCCESS;
        }

        if (strip->parsed()) {
            emit(serialize_query(strip_inequalities(parse_query(read_file(query_file)))), out);
            return EXIT_SUCCESS;
        }
        if (blow->parsed()) {
            emit(serialize_database(blowup(parse_database(read_file(db_file)), k)), out);
            return EXIT_SUCCESS;
        }
        if (prod->parsed()) {
            auto d = parse_database(read_file(db_file));
            emit(serialize_database(db_file2.empty() ? power_product(d, k) : product(d, parse_database(read_file(db_file2)))),
                out);
            return EXIT_SUCCESS;
        }
    }
    catch (const Error & e) {
        cerr << "bagcq: " << e.what() << endl;
        return 2;
    }
    catch (const std::exception & e) {
        cerr << "bagcq: " << e.what() << endl;
        return 2;
    }
    return 2;
}

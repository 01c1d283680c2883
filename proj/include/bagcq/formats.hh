#ifndef BAGCQ_FORMATS_HH
#define BAGCQ_FORMATS_HH

#include <bagcq/count.hh>
#include <bagcq/encoder.hh>
#include <bagcq/polyreduce.hh>
#include <bagcq/qalgebra.hh>
#include <bagcq/relcore.hh>

#include <filesystem>
#include <string>

namespace bagcq
{
    // Query text: one clause per line (or per ';' when inline)
    //   atom REL(t1,...,tk)     terms starting with '@' are constants
    //   neq t1 t2
    //   rel REL K               declares a relation without using it
    //   var x y ...             variables that need not occur elsewhere
    //   # comment
    auto parse_query(const std::string & text) -> Query;
    auto serialize_query(const Query & q, bool inline_form = false) -> std::string;

    //   elem e1 e2 ...
    //   const @name = e
    //   fact REL(e1,...,ek)
    //   rel REL K
    auto parse_database(const std::string & text) -> Database;
    auto serialize_database(const Database & d) -> std::string;

    //   vars N
    //   term C i1 i2 ... id
    auto parse_polynomial(const std::string & text) -> Polynomial;
    auto serialize_polynomial(const Polynomial & p) -> std::string;

    // (leaf "<query>") (dand e ...) (pow e K). A leaf string holding a '(' or
    // a ';', or empty, is an inline query, anything else a path relative to
    // base_dir.
    auto parse_query_expr(const std::string & text, const std::filesystem::path & base_dir = ".") -> QueryExpr;
    auto serialize_query_expr(const QueryExpr & e) -> std::string;

    auto parse_count(const std::string & text) -> Count;
    auto serialize_count(const Count & c) -> std::string;

    /// One JSON object per line: a header with c_frak, d, m, n, then one line
    /// per polynomial (P_s, P_b, P1, P2, P1', P2').
    auto serialize_instance(const HilbertInstance & inst) -> std::string;
    auto parse_instance(const std::string & text) -> HilbertInstance;

    auto read_file(const std::filesystem::path & p) -> std::string;
    auto write_file(const std::filesystem::path & p, const std::string & content) -> void;

    /// phi_s.cq, phi_b.qx, c.count, arena.db, instance.poly.json-lines
    auto write_encoder_output(const std::filesystem::path & dir, const HilbertInstance & inst, const EncoderOutput & out)
        -> void;
}

#endif

#include <bagcq/relcore.hh>

#include <algorithm>

using namespace bagcq;

using std::optional;
using std::string;
using std::string_view;
using std::to_string;
using std::vector;

Schema::Schema()
{
    _constants.emplace(mars);
    _constants.emplace(venus);
}

auto Schema::add_relation(const string & name, int arity) -> Schema &
{
    if (arity < 1)
        throw Error(ErrorKind::InvalidArgument, "relation " + name + " must have arity >= 1");
    auto [it, inserted] = _relations.emplace(name, arity);
    if (! inserted && it->second != arity)
        throw Error(ErrorKind::SchemaMismatch, "relation " + name + " declared with arity " + to_string(it->second)
                + " and " + to_string(arity));
    return *this;
}

auto Schema::add_constant(const string & name) -> Schema &
{
    _constants.emplace(name);
    return *this;
}

auto Schema::arity(string_view relation) const -> optional<int>
{
    auto it = _relations.find(relation);
    if (it == _relations.end())
        return std::nullopt;
    return it->second;
}

auto Schema::has_constant(string_view name) const -> bool
{
    return _constants.contains(name);
}

auto Schema::merge(const Schema & a, const Schema & b) -> Schema
{
    Schema result = a;
    for (auto & [r, n] : b._relations)
        result.add_relation(r, n);
    for (auto & c : b._constants)
        result.add_constant(c);
    return result;
}

Inequality::Inequality(Term a, Term b)
{
    if (b < a)
        std::swap(a, b);
    lhs = std::move(a);
    rhs = std::move(b);
}

Query::Query(Schema s) :
    _schema(std::move(s))
{
}

Query::Query(Schema s, const vector<Atom> & atoms, const vector<Inequality> & inequalities) :
    _schema(std::move(s))
{
    for (auto & a : atoms)
        add_atom(a);
    for (auto & i : inequalities)
        add_inequality(i.lhs, i.rhs);
}

auto Query::check_term(const Term & t) -> void
{
    if (t.name.empty())
        throw Error(ErrorKind::InvalidArgument, "empty term name");
    if (t.is_constant())
        _schema.add_constant(t.name);
}

auto Query::declare_relation(const string & name, int arity) -> Query &
{
    _schema.add_relation(name, arity);
    return *this;
}

auto Query::add_atom(Atom a) -> Query &
{
    auto declared = _schema.arity(a.relation);
    if (declared && *declared != int(a.args.size()))
        throw Error(ErrorKind::SchemaMismatch, "atom " + a.relation + " has " + to_string(a.args.size())
                + " arguments but the relation has arity " + to_string(*declared));
    if (! declared)
        _schema.add_relation(a.relation, int(a.args.size()));
    for (auto & t : a.args)
        check_term(t);
    if (_atoms.end() == std::find(_atoms.begin(), _atoms.end(), a))
        _atoms.push_back(std::move(a));
    return *this;
}

auto Query::add_atom(const string & relation, vector<Term> args) -> Query &
{
    return add_atom(Atom{relation, std::move(args)});
}

auto Query::add_inequality(Term a, Term b) -> Query &
{
    check_term(a);
    check_term(b);
    Inequality i{std::move(a), std::move(b)};
    if (_inequalities.end() == std::find(_inequalities.begin(), _inequalities.end(), i))
        _inequalities.push_back(std::move(i));
    return *this;
}

auto Query::add_variable(const string & name) -> Query &
{
    check_term(Term::var(name));
    if (_free_variables.end() == std::find(_free_variables.begin(), _free_variables.end(), name))
        _free_variables.push_back(name);
    return *this;
}

namespace
{
    template <typename F_>
    auto for_each_term(const Query & q, F_ && f) -> void
    {
        for (auto & a : q.atoms())
            for (auto & t : a.args)
                f(t);
        for (auto & i : q.inequalities()) {
            f(i.lhs);
            f(i.rhs);
        }
        for (auto & v : q.free_variables())
            f(Term::var(v));
    }
}

auto Query::variables() const -> vector<string>
{
    std::set<string> seen;
    for_each_term(*this, [&](const Term & t) {
        if (t.is_variable())
            seen.insert(t.name);
    });
    return {seen.begin(), seen.end()};
}

auto Query::constants_used() const -> vector<string>
{
    std::set<string> seen;
    for_each_term(*this, [&](const Term & t) {
        if (t.is_constant())
            seen.insert(t.name);
    });
    return {seen.begin(), seen.end()};
}

Database::Database(Schema s) :
    _schema(std::move(s))
{
}

auto Database::add_element(const string & name) -> ElementId
{
    if (name.empty())
        throw Error(ErrorKind::InvalidArgument, "empty element name");
    auto it = _ids.find(name);
    if (it != _ids.end())
        return it->second;
    ElementId id = ElementId(_names.size());
    _names.push_back(name);
    _ids.emplace(name, id);
    return id;
}

auto Database::declare_relation(const string & name, int arity) -> Database &
{
    _schema.add_relation(name, arity);
    return *this;
}

auto Database::add_fact(const string & relation, const Tuple & t) -> Database &
{
    auto declared = _schema.arity(relation);
    if (! declared)
        _schema.add_relation(relation, int(t.size()));
    else if (*declared != int(t.size()))
        throw Error(ErrorKind::SchemaMismatch, "fact " + relation + " has " + to_string(t.size())
                + " elements but the relation has arity " + to_string(*declared));
    for (auto e : t)
        if (e >= _names.size())
            throw Error(ErrorKind::MalformedDatabase, "fact " + relation + " mentions an unknown element");
    _facts[relation].insert(t);
    return *this;
}

auto Database::add_fact(const string & relation, const vector<string> & element_names) -> Database &
{
    Tuple t;
    for (auto & n : element_names)
        t.push_back(add_element(n));
    return add_fact(relation, t);
}

auto Database::remove_fact(const string & relation, const Tuple & t) -> bool
{
    auto it = _facts.find(relation);
    if (it == _facts.end())
        return false;
    bool erased = it->second.erase(t) > 0;
    if (it->second.empty())
        _facts.erase(it);
    return erased;
}

auto Database::interpret(const string & constant, ElementId e) -> Database &
{
    if (e >= _names.size())
        throw Error(ErrorKind::MalformedDatabase, "constant " + constant + " interpreted as an unknown element");
    _schema.add_constant(constant);
    _const_interp[constant] = e;
    return *this;
}

auto Database::interpret(const string & constant, const string & element_name) -> Database &
{
    return interpret(constant, add_element(element_name));
}

auto Database::element_id(string_view name) const -> optional<ElementId>
{
    auto it = _ids.find(name);
    if (it == _ids.end())
        return std::nullopt;
    return it->second;
}

auto Database::facts(string_view relation) const -> const std::set<Tuple> &
{
    static const std::set<Tuple> empty;
    auto it = _facts.find(relation);
    return it == _facts.end() ? empty : it->second;
}

auto Database::has_fact(string_view relation, const Tuple & t) const -> bool
{
    return facts(relation).contains(t);
}

auto Database::fact_count() const -> std::size_t
{
    std::size_t n = 0;
    for (auto & [_, f] : _facts)
        n += f.size();
    return n;
}

auto Database::interpretation(string_view constant) const -> optional<ElementId>
{
    auto it = _const_interp.find(constant);
    if (it == _const_interp.end())
        return std::nullopt;
    return it->second;
}

auto bagcq::canonical_structure(const Query & q) -> Database
{
    Database d{q.schema()};
    auto constants = q.constants_used();
    for (auto & c : constants)
        d.interpret(c, d.add_element(c));

    // a variable sharing its name with a constant gets a primed element name
    std::map<string, string> var_elem;
    for (auto & v : q.variables()) {
        string name = v;
        while (std::binary_search(constants.begin(), constants.end(), name))
            name += "'";
        var_elem.emplace(v, name);
        d.add_element(name);
    }

    for (auto & a : q.atoms()) {
        Tuple t;
        for (auto & arg : a.args)
            t.push_back(*d.element_id(arg.is_constant() ? arg.name : var_elem.at(arg.name)));
        d.add_fact(a.relation, t);
    }
    return d;
}

auto bagcq::is_nontrivial(const Database & d) -> bool
{
    auto m = d.interpretation(mars), v = d.interpretation(venus);
    if (! m || ! v)
        throw Error(ErrorKind::MalformedDatabase, "mars and venus must both be interpreted");
    return *m != *v;
}

auto bagcq::database_union(const Database & a, const Database & b) -> Database
{
    Database result{Schema::merge(a.schema(), b.schema())};
    for (auto & n : a.element_names())
        result.add_element(n);
    for (auto & n : b.element_names())
        result.add_element(n);

    auto copy = [&](const Database & src) {
        for (auto & [rel, tuples] : src.all_facts())
            for (auto & t : tuples) {
                Tuple mapped;
                for (auto e : t)
                    mapped.push_back(*result.element_id(src.element_name(e)));
                result.add_fact(rel, mapped);
            }
        for (auto & [c, e] : src.const_interp()) {
            auto mapped = *result.element_id(src.element_name(e));
            auto existing = result.interpretation(c);
            if (existing && *existing != mapped)
                throw Error(ErrorKind::MalformedDatabase, "constant " + c + " interpreted differently in union operands");
            result.interpret(c, mapped);
        }
    };
    copy(a);
    copy(b);
    return result;
}

auto bagcq::restrict_to(const Database & d, const std::set<string, std::less<>> & relations) -> Database
{
    Schema s;
    for (auto & [r, n] : d.schema().relations())
        if (relations.contains(r))
            s.add_relation(r, n);
    for (auto & c : d.schema().constants())
        s.add_constant(c);
    Database result{s};
    for (auto & n : d.element_names())
        result.add_element(n);
    for (auto & [rel, tuples] : d.all_facts())
        if (relations.contains(rel))
            for (auto & t : tuples)
                result.add_fact(rel, t);
    for (auto & [c, e] : d.const_interp())
        result.interpret(c, e);
    return result;
}

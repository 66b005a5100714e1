// Copyright 2026 The Traitscope Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "traitscope/parser.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <sstream>

namespace traitscope {

ParseError::ParseError(std::string file, std::uint32_t line, std::uint32_t column, std::string message,
                       std::vector<std::string> expected)
    : std::runtime_error([&] {
          std::string text = file + ":" + std::to_string(line) + ":" + std::to_string(column) + ": " + message;
          if (!expected.empty()) {
              text += " (expected ";
              for (std::size_t i = 0; i < expected.size(); ++i) {
                  if (i) text += i + 1 == expected.size() ? " or " : ", ";
                  text += expected[i];
              }
              text += ")";
          }
          return text;
      }()),
      file_(std::move(file)),
      line_(line),
      column_(column),
      message_(std::move(message)),
      expected_(std::move(expected)) {}

namespace {

// ---------------------------------------------------------------------------
// Lexer

enum class Tok {
    Ident,
    Number,
    Region,
    Infer,
    LAngle,
    RAngle,
    LParen,
    RParen,
    LBrace,
    RBrace,
    LBracket,
    RBracket,
    Comma,
    Semi,
    Colon,
    PathSep,
    Assign,
    EqEq,
    Arrow,
    Amp,
    Hash,
    Plus,
    End,
};

struct Pos {
    std::uint32_t line = 1;
    std::uint32_t col = 1;
};

struct Token {
    Tok kind = Tok::End;
    std::string text;
    Pos pos;
};

std::string describe(Tok kind) {
    switch (kind) {
        case Tok::Ident: return "identifier";
        case Tok::Number: return "number";
        case Tok::Region: return "region";
        case Tok::Infer: return "inference variable";
        case Tok::LAngle: return "`<`";
        case Tok::RAngle: return "`>`";
        case Tok::LParen: return "`(`";
        case Tok::RParen: return "`)`";
        case Tok::LBrace: return "`{`";
        case Tok::RBrace: return "`}`";
        case Tok::LBracket: return "`[`";
        case Tok::RBracket: return "`]`";
        case Tok::Comma: return "`,`";
        case Tok::Semi: return "`;`";
        case Tok::Colon: return "`:`";
        case Tok::PathSep: return "`::`";
        case Tok::Assign: return "`=`";
        case Tok::EqEq: return "`==`";
        case Tok::Arrow: return "`->`";
        case Tok::Amp: return "`&`";
        case Tok::Hash: return "`#`";
        case Tok::Plus: return "`+`";
        case Tok::End: return "end of input";
    }
    return "token";
}

bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

std::vector<Token> lex(std::string_view src, const std::string& file) {
    std::vector<Token> out;
    Pos pos;
    std::size_t i = 0;
    auto advance = [&](std::size_t n) {
        for (std::size_t k = 0; k < n && i < src.size(); ++k, ++i) {
            if (src[i] == '\n') {
                ++pos.line;
                pos.col = 1;
            } else {
                ++pos.col;
            }
        }
    };
    while (i < src.size()) {
        char c = src[i];
        if (c == '\n' || c == ' ' || c == '\t' || c == '\r') {
            advance(1);
            continue;
        }
        if (c == '/' && i + 1 < src.size() && src[i + 1] == '/') {
            while (i < src.size() && src[i] != '\n') advance(1);
            continue;
        }
        Token tok;
        tok.pos = pos;
        if (ident_start(c)) {
            std::size_t j = i;
            while (j < src.size() && ident_char(src[j])) ++j;
            tok.kind = Tok::Ident;
            tok.text = std::string(src.substr(i, j - i));
            advance(j - i);
        } else if (std::isdigit(static_cast<unsigned char>(c))) {
            std::size_t j = i;
            while (j < src.size() && std::isdigit(static_cast<unsigned char>(src[j]))) ++j;
            tok.kind = Tok::Number;
            tok.text = std::string(src.substr(i, j - i));
            advance(j - i);
        } else if (c == '\'') {
            std::size_t j = i + 1;
            while (j < src.size() && ident_char(src[j])) ++j;
            if (j == i + 1) throw ParseError(file, pos.line, pos.col, "expected a region name after `'`");
            tok.kind = Tok::Region;
            tok.text = std::string(src.substr(i + 1, j - i - 1));
            advance(j - i);
        } else if (c == '?') {
            std::size_t j = i + 1;
            while (j < src.size() && std::isdigit(static_cast<unsigned char>(src[j]))) ++j;
            if (j == i + 1) throw ParseError(file, pos.line, pos.col, "expected a number after `?`");
            tok.kind = Tok::Infer;
            tok.text = std::string(src.substr(i + 1, j - i - 1));
            advance(j - i);
        } else {
            auto two = src.substr(i, 2);
            if (two == "::") {
                tok.kind = Tok::PathSep;
            } else if (two == "==") {
                tok.kind = Tok::EqEq;
            } else if (two == "->") {
                tok.kind = Tok::Arrow;
            }
            if (tok.kind != Tok::End) {
                tok.text = std::string(two);
                advance(2);
            } else {
                switch (c) {
                    case '<': tok.kind = Tok::LAngle; break;
                    case '>': tok.kind = Tok::RAngle; break;
                    case '(': tok.kind = Tok::LParen; break;
                    case ')': tok.kind = Tok::RParen; break;
                    case '{': tok.kind = Tok::LBrace; break;
                    case '}': tok.kind = Tok::RBrace; break;
                    case '[': tok.kind = Tok::LBracket; break;
                    case ']': tok.kind = Tok::RBracket; break;
                    case ',': tok.kind = Tok::Comma; break;
                    case ';': tok.kind = Tok::Semi; break;
                    case ':': tok.kind = Tok::Colon; break;
                    case '=': tok.kind = Tok::Assign; break;
                    case '&': tok.kind = Tok::Amp; break;
                    case '#': tok.kind = Tok::Hash; break;
                    case '+': tok.kind = Tok::Plus; break;
                    default:
                        throw ParseError(file, pos.line, pos.col,
                                         std::string("unexpected character `") + c + "`");
                }
                tok.text = std::string(1, c);
                advance(1);
            }
        }
        out.push_back(std::move(tok));
    }
    Token end;
    end.kind = Tok::End;
    end.pos = pos;
    out.push_back(end);
    return out;
}

// ---------------------------------------------------------------------------
// Unresolved syntax

struct RawPath {
    bool absolute = false;
    std::vector<std::string> segments;
    Pos pos;

    [[nodiscard]] std::string joined() const {
        std::string out;
        for (std::size_t i = 0; i < segments.size(); ++i) {
            if (i) out += "::";
            out += segments[i];
        }
        return out;
    }
};

struct RawType;

struct RawTraitRef {
    RawPath path;
    std::vector<RawType> args;
    std::vector<RegionVar> regions;
};

struct RawBound {
    std::optional<RawTraitRef> trait;
    std::optional<RegionVar> region;
};

struct RawType {
    enum class Kind { Unit, Path, Ref, Tuple, Fn, Proj, Dyn, Infer } kind = Kind::Unit;
    Pos pos;
    RawPath path;
    std::vector<RawType> args;  // path args | tuple elements | fn params | ref inner | proj self
    std::vector<RegionVar> regions;
    std::vector<RawType> extra;  // fn output | proj assoc args
    RegionVar region;
    bool mutable_ref = false;
    std::uint32_t infer_index = 0;
    RawTraitRef trait;
    std::string assoc;
    std::vector<RawBound> bounds;
};

struct RawPredicate {
    enum class Kind { Bound, Outlives, ProjEq } kind = Kind::Bound;
    Pos pos;
    RawType lhs;
    RawTraitRef trait;
    RegionVar region;
    RawType rhs;
};

struct RawParams {
    std::vector<RegionVar> regions;
    std::vector<std::string> types;
    std::vector<RawPredicate> where;
};

struct RawNewtype {
    std::string name;
    RawParams params;
    RawType body;
};

struct RawAssocDecl {
    std::string name;
    RawParams params;
    Pos pos;
};

struct RawTrait {
    std::string name;
    RawParams params;
    std::vector<RawAssocDecl> assocs;
    std::optional<std::uint32_t> callable;
};

struct RawAssocBinding {
    std::string name;
    RawParams params;
    RawType value;
    Pos pos;
};

struct RawImpl {
    RawParams params;
    RawTraitRef trait;
    RawType self;
    std::vector<RawAssocBinding> bindings;
};

struct RawGoal {
    std::string label;
    RawPredicate predicate;
};

struct RawItem {
    std::variant<RawNewtype, RawTrait, RawImpl, RawGoal> value;
    std::string module;
    bool external = false;
    Pos pos;
    std::uint32_t line_end = 0;
};

// ---------------------------------------------------------------------------
// Parser

const std::set<std::string, std::less<>> kKeywords = {"newtype", "trait", "impl", "goal", "mod", "extern", "for",
                                                      "where", "type", "as", "fn", "dyn", "mut", "unit"};

class Parser {
  public:
    Parser(std::vector<Token> tokens, std::string file) : tokens_(std::move(tokens)), file_(std::move(file)) {}

    std::vector<RawItem> parse_program() {
        std::vector<RawItem> items;
        parse_items("", false, items);
        expect(Tok::End);
        return items;
    }

  private:
    const Token& peek(std::size_t ahead = 0) const {
        return tokens_[std::min(pos_ + ahead, tokens_.size() - 1)];
    }
    bool at(Tok kind) const { return peek().kind == kind; }
    bool at_keyword(std::string_view kw) const { return at(Tok::Ident) && peek().text == kw; }

    const Token& next() {
        const Token& t = tokens_[pos_];
        if (pos_ + 1 < tokens_.size()) ++pos_;
        last_line_ = t.pos.line;
        return t;
    }

    [[noreturn]] void fail(const Token& at_token, std::string message, std::vector<std::string> expected = {}) {
        throw ParseError(file_, at_token.pos.line, at_token.pos.col, std::move(message), std::move(expected));
    }

    [[noreturn]] void unexpected(std::vector<std::string> expected) {
        const auto& t = peek();
        std::string found = t.kind == Tok::End ? "end of input" : "`" + t.text + "`";
        fail(t, "unexpected " + found, std::move(expected));
    }

    const Token& expect(Tok kind) {
        if (!at(kind)) unexpected({describe(kind)});
        return next();
    }

    void expect_keyword(std::string_view kw) {
        if (!at_keyword(kw)) unexpected({"`" + std::string(kw) + "`"});
        next();
    }

    bool accept(Tok kind) {
        if (!at(kind)) return false;
        next();
        return true;
    }

    std::string expect_name() {
        if (!at(Tok::Ident) || kKeywords.contains(peek().text)) unexpected({"identifier"});
        return next().text;
    }

    void parse_items(const std::string& module, bool external, std::vector<RawItem>& items) {
        while (!at(Tok::End) && !at(Tok::RBrace)) parse_item(module, external, items);
    }

    void parse_item(const std::string& module, bool external, std::vector<RawItem>& items) {
        Pos start = peek().pos;
        bool is_extern = external;
        if (at_keyword("extern")) {
            next();
            is_extern = true;
        }
        std::optional<std::uint32_t> callable;
        while (at(Tok::Hash)) callable = parse_attribute();

        if (at_keyword("mod")) {
            if (callable) fail(peek(), "attributes are not allowed on modules");
            next();
            std::string inner = module;
            do {
                if (!inner.empty()) inner += "::";
                inner += expect_name();
            } while (accept(Tok::PathSep));
            expect(Tok::LBrace);
            parse_items(inner, is_extern, items);
            expect(Tok::RBrace);
            return;
        }

        RawItem item;
        item.module = module;
        item.external = is_extern;
        item.pos = start;
        if (at_keyword("newtype")) {
            if (callable) fail(peek(), "`callable` applies only to traits");
            item.value = parse_newtype();
        } else if (at_keyword("trait")) {
            auto t = parse_trait();
            t.callable = callable;
            item.value = std::move(t);
        } else if (at_keyword("impl")) {
            if (callable) fail(peek(), "`callable` applies only to traits");
            item.value = parse_impl();
        } else if (at_keyword("goal")) {
            if (callable || is_extern) fail(peek(), "goals take no modifiers");
            item.value = parse_goal();
        } else {
            unexpected({"`newtype`", "`trait`", "`impl`", "`goal`", "`mod`"});
        }
        item.line_end = last_line_;
        items.push_back(std::move(item));
    }

    // #[callable(arity = N)]
    std::uint32_t parse_attribute() {
        expect(Tok::Hash);
        expect(Tok::LBracket);
        if (!at_keyword("callable")) unexpected({"`callable`"});
        next();
        expect(Tok::LParen);
        if (!at_keyword("arity")) unexpected({"`arity`"});
        next();
        expect(Tok::Assign);
        const auto& num = expect(Tok::Number);
        expect(Tok::RParen);
        expect(Tok::RBracket);
        return static_cast<std::uint32_t>(std::stoul(num.text));
    }

    RawNewtype parse_newtype() {
        expect_keyword("newtype");
        RawNewtype n;
        n.name = expect_name();
        n.params = parse_binders();
        parse_where(n.params);
        if (accept(Tok::Assign)) {
            n.body = parse_type();
        } else {
            n.body.kind = RawType::Kind::Unit;
            n.body.pos = peek().pos;
        }
        expect(Tok::Semi);
        return n;
    }

    RawTrait parse_trait() {
        expect_keyword("trait");
        RawTrait t;
        t.name = expect_name();
        t.params = parse_binders();
        parse_where(t.params);
        if (accept(Tok::Semi)) return t;
        expect(Tok::LBrace);
        while (!accept(Tok::RBrace)) {
            if (!at_keyword("type")) unexpected({"`type`", "`}`"});
            RawAssocDecl a;
            a.pos = next().pos;
            a.name = expect_name();
            a.params = parse_binders();
            parse_where(a.params);
            expect(Tok::Semi);
            t.assocs.push_back(std::move(a));
        }
        return t;
    }

    RawImpl parse_impl() {
        expect_keyword("impl");
        RawImpl impl;
        impl.params = parse_binders();
        impl.trait = parse_trait_ref();
        expect_keyword("for");
        impl.self = parse_type();
        parse_where(impl.params);
        if (accept(Tok::Semi)) return impl;
        expect(Tok::LBrace);
        while (!accept(Tok::RBrace)) {
            if (!at_keyword("type")) unexpected({"`type`", "`}`"});
            RawAssocBinding b;
            b.pos = next().pos;
            b.name = expect_name();
            b.params = parse_binders();
            parse_where(b.params);
            expect(Tok::Assign);
            b.value = parse_type();
            expect(Tok::Semi);
            impl.bindings.push_back(std::move(b));
        }
        return impl;
    }

    RawGoal parse_goal() {
        expect_keyword("goal");
        RawGoal g;
        g.label = expect_name();
        expect(Tok::Colon);
        auto preds = parse_predicate();
        if (preds.size() != 1) fail(peek(), "a goal must be a single predicate");
        g.predicate = std::move(preds.front());
        expect(Tok::Semi);
        return g;
    }

    // `<'a, T: Bound + 'b, U>`; binder bounds become where clauses.
    RawParams parse_binders() {
        RawParams params;
        if (!accept(Tok::LAngle)) return params;
        while (!accept(Tok::RAngle)) {
            if (at(Tok::Region)) {
                params.regions.push_back(RegionVar{next().text});
            } else {
                const auto& tok = peek();
                std::string name = expect_name();
                params.types.push_back(name);
                if (accept(Tok::Colon)) {
                    RawType lhs;
                    lhs.kind = RawType::Kind::Path;
                    lhs.pos = tok.pos;
                    lhs.path.segments = {name};
                    lhs.path.pos = tok.pos;
                    for (auto& p : parse_bounds(lhs, tok.pos)) params.where.push_back(std::move(p));
                }
            }
            if (!accept(Tok::Comma)) {
                expect(Tok::RAngle);
                break;
            }
        }
        return params;
    }

    void parse_where(RawParams& params) {
        if (!at_keyword("where")) return;
        next();
        while (!at(Tok::LBrace) && !at(Tok::Semi) && !at(Tok::Assign) && !at(Tok::End)) {
            for (auto& p : parse_predicate()) params.where.push_back(std::move(p));
            if (!accept(Tok::Comma)) break;
        }
    }

    // A predicate with `+`-joined bounds expands into several predicates.
    std::vector<RawPredicate> parse_predicate() {
        Pos start = peek().pos;
        RawType lhs = parse_type();
        if (accept(Tok::EqEq)) {
            if (lhs.kind != RawType::Kind::Proj) {
                throw ParseError(file_, start.line, start.col, "left side of `==` must be a projection");
            }
            RawPredicate p;
            p.kind = RawPredicate::Kind::ProjEq;
            p.pos = start;
            p.lhs = std::move(lhs);
            p.rhs = parse_type();
            return {std::move(p)};
        }
        if (!at(Tok::Colon)) unexpected({"`:`", "`==`"});
        next();
        return parse_bounds(lhs, start);
    }

    std::vector<RawPredicate> parse_bounds(const RawType& lhs, Pos start) {
        std::vector<RawPredicate> out;
        do {
            RawPredicate p;
            p.pos = start;
            p.lhs = lhs;
            if (at(Tok::Region)) {
                p.kind = RawPredicate::Kind::Outlives;
                p.region = RegionVar{next().text};
            } else {
                p.kind = RawPredicate::Kind::Bound;
                p.trait = parse_trait_ref();
            }
            out.push_back(std::move(p));
        } while (accept(Tok::Plus));
        return out;
    }

    RawPath parse_path() {
        RawPath path;
        path.pos = peek().pos;
        if (accept(Tok::PathSep)) path.absolute = true;
        path.segments.push_back(expect_name());
        while (at(Tok::PathSep) && peek(1).kind == Tok::Ident) {
            next();
            path.segments.push_back(expect_name());
        }
        return path;
    }

    void parse_generic_args(std::vector<RawType>& types, std::vector<RegionVar>& regions) {
        if (!accept(Tok::LAngle)) return;
        while (!accept(Tok::RAngle)) {
            if (at(Tok::Region)) {
                regions.push_back(RegionVar{next().text});
            } else {
                types.push_back(parse_type());
            }
            if (!accept(Tok::Comma)) {
                expect(Tok::RAngle);
                break;
            }
        }
    }

    RawTraitRef parse_trait_ref() {
        RawTraitRef ref;
        if (!at(Tok::Ident) && !at(Tok::PathSep)) unexpected({"trait name"});
        ref.path = parse_path();
        parse_generic_args(ref.args, ref.regions);
        return ref;
    }

    RawType parse_type() {
        RawType t;
        t.pos = peek().pos;
        if (at_keyword("unit")) {
            next();
            t.kind = RawType::Kind::Unit;
        } else if (accept(Tok::LParen)) {
            if (accept(Tok::RParen)) {
                t.kind = RawType::Kind::Unit;
                return t;
            }
            RawType first = parse_type();
            if (accept(Tok::RParen)) return first;
            t.kind = RawType::Kind::Tuple;
            t.args.push_back(std::move(first));
            while (accept(Tok::Comma)) {
                if (at(Tok::RParen)) break;
                t.args.push_back(parse_type());
            }
            expect(Tok::RParen);
        } else if (accept(Tok::Amp)) {
            t.kind = RawType::Kind::Ref;
            t.region = at(Tok::Region) ? RegionVar{next().text} : RegionVar{"_"};
            if (at_keyword("mut")) {
                next();
                t.mutable_ref = true;
            }
            t.args.push_back(parse_type());
        } else if (at_keyword("fn")) {
            next();
            t.kind = RawType::Kind::Fn;
            expect(Tok::LParen);
            while (!accept(Tok::RParen)) {
                t.args.push_back(parse_type());
                if (!accept(Tok::Comma)) {
                    expect(Tok::RParen);
                    break;
                }
            }
            if (accept(Tok::Arrow)) {
                t.extra.push_back(parse_type());
            } else {
                RawType out;
                out.pos = peek().pos;
                t.extra.push_back(out);
            }
        } else if (at(Tok::LAngle)) {
            next();
            t.kind = RawType::Kind::Proj;
            t.args.push_back(parse_type());
            expect_keyword("as");
            t.trait = parse_trait_ref();
            expect(Tok::RAngle);
            expect(Tok::PathSep);
            t.assoc = expect_name();
            parse_generic_args(t.extra, t.regions);
        } else if (at_keyword("dyn")) {
            next();
            t.kind = RawType::Kind::Dyn;
            do {
                RawBound b;
                if (at(Tok::Region)) {
                    b.region = RegionVar{next().text};
                } else {
                    b.trait = parse_trait_ref();
                }
                t.bounds.push_back(std::move(b));
            } while (accept(Tok::Plus));
        } else if (at(Tok::Infer)) {
            t.kind = RawType::Kind::Infer;
            t.infer_index = static_cast<std::uint32_t>(std::stoul(next().text));
        } else if (at(Tok::Ident) || at(Tok::PathSep)) {
            if (at(Tok::Ident) && kKeywords.contains(peek().text)) unexpected({"type"});
            t.kind = RawType::Kind::Path;
            t.path = parse_path();
            parse_generic_args(t.args, t.regions);
        } else {
            unexpected({"type"});
        }
        return t;
    }

    std::vector<Token> tokens_;
    std::string file_;
    std::size_t pos_ = 0;
    std::uint32_t last_line_ = 1;
};

// ---------------------------------------------------------------------------
// Name resolution

struct Scope {
    std::string module;
    std::set<std::string> type_vars;
    std::optional<Type> self_type;
    bool self_is_var = false;
    bool allow_infer = false;
};

class Resolver {
  public:
    Resolver(std::string file, Provenance provenance_default)
        : file_(std::move(file)), provenance_default_(provenance_default) {}

    Context run(const std::vector<RawItem>& items) {
        declare(items);
        std::vector<Declaration> declarations;
        std::vector<GoalItem> goals;
        std::uint32_t next_impl = 0;
        for (const auto& item : items) {
            Span span{file_, item.pos.line, item.line_end};
            Provenance prov = item.external ? Provenance::External : provenance_default_;
            if (const auto* n = std::get_if<RawNewtype>(&item.value)) {
                declarations.push_back({resolve_newtype(*n, item), prov, span});
            } else if (const auto* t = std::get_if<RawTrait>(&item.value)) {
                declarations.push_back({resolve_trait(*t, item), prov, span});
            } else if (const auto* i = std::get_if<RawImpl>(&item.value)) {
                declarations.push_back({resolve_impl(*i, item, ImplId{next_impl++}), prov, span});
            } else {
                const auto& g = std::get<RawGoal>(item.value);
                Scope scope;
                scope.module = item.module;
                scope.allow_infer = true;
                goals.push_back({g.label, resolve_predicate(g.predicate, scope), span});
            }
        }
        return Context(std::move(declarations), std::move(goals), std::move(symbols_));
    }

  private:
    [[noreturn]] void fail(Pos pos, std::string message) {
        throw ParseError(file_, pos.line, pos.col, std::move(message));
    }

    static std::string qualify(const std::string& module, const std::string& name) {
        return module.empty() ? name : module + "::" + name;
    }

    SymbolId add_symbol(SymbolKind kind, std::string path, Provenance prov, Span span, Pos pos) {
        if (by_path_.contains(path)) fail(pos, "duplicate definition of `" + path + "`");
        SymbolId id{static_cast<std::uint32_t>(symbols_.size())};
        by_path_.emplace(path, id);
        symbols_.push_back(SymbolInfo{kind, std::move(path), prov, std::move(span)});
        return id;
    }

    void declare(const std::vector<RawItem>& items) {
        std::set<std::string> labels;
        for (const auto& item : items) {
            Span span{file_, item.pos.line, item.line_end};
            Provenance prov = item.external ? Provenance::External : provenance_default_;
            if (const auto* n = std::get_if<RawNewtype>(&item.value)) {
                add_symbol(SymbolKind::Newtype, qualify(item.module, n->name), prov, span, item.pos);
            } else if (const auto* t = std::get_if<RawTrait>(&item.value)) {
                std::string path = qualify(item.module, t->name);
                SymbolId id = add_symbol(SymbolKind::Trait, path, prov, span, item.pos);
                auto& assocs = assocs_by_trait_[id.value];
                for (const auto& a : t->assocs) {
                    Span assoc_span{file_, a.pos.line, a.pos.line};
                    assocs.emplace(a.name,
                                   add_symbol(SymbolKind::AssocType, path + "::" + a.name, prov, assoc_span, a.pos));
                }
            } else if (const auto* g = std::get_if<RawGoal>(&item.value)) {
                if (!labels.insert(g->label).second) fail(item.pos, "duplicate goal label `" + g->label + "`");
            }
        }
    }

    bool matches_kind(SymbolId id, SymbolKind kind) const { return symbols_[id.value].kind == kind; }

    SymbolId resolve_symbol(const RawPath& path, const std::string& module, SymbolKind kind) {
        std::string joined = path.joined();
        auto lookup = [&](const std::string& full) -> std::optional<SymbolId> {
            if (auto it = by_path_.find(full); it != by_path_.end() && matches_kind(it->second, kind)) {
                return it->second;
            }
            return std::nullopt;
        };
        if (path.absolute) {
            if (auto id = lookup(joined)) return *id;
        } else {
            std::string prefix = module;
            while (true) {
                if (auto id = lookup(qualify(prefix, joined))) return *id;
                if (prefix.empty()) break;
                auto cut = prefix.rfind("::");
                prefix = cut == std::string::npos ? "" : prefix.substr(0, cut);
            }
            std::vector<SymbolId> suffix_matches;
            std::string suffix = "::" + joined;
            for (std::size_t i = 0; i < symbols_.size(); ++i) {
                const auto& p = symbols_[i].path;
                if (symbols_[i].kind == kind && p.size() > suffix.size() &&
                    p.compare(p.size() - suffix.size(), suffix.size(), suffix) == 0) {
                    suffix_matches.push_back(SymbolId{static_cast<std::uint32_t>(i)});
                }
            }
            if (suffix_matches.size() == 1) return suffix_matches.front();
            if (suffix_matches.size() > 1) {
                std::string names;
                for (auto id : suffix_matches) names += " `" + symbols_[id.value].path + "`";
                fail(path.pos, "ambiguous reference `" + joined + "`; candidates:" + names);
            }
        }
        const char* what = kind == SymbolKind::Trait ? "trait" : "type";
        fail(path.pos, "unresolved " + std::string(what) + " `" + joined + "`");
    }

    TraitInstance resolve_trait_ref(const RawTraitRef& ref, const Scope& scope) {
        TraitInstance inst;
        inst.trait = resolve_symbol(ref.path, scope.module, SymbolKind::Trait);
        for (const auto& a : ref.args) inst.type_args.push_back(resolve_type(a, scope));
        inst.region_args = ref.regions;
        return inst;
    }

    Type resolve_type(const RawType& raw, const Scope& scope) {
        using K = RawType::Kind;
        switch (raw.kind) {
            case K::Unit: return Type::unit();
            case K::Infer:
                if (!scope.allow_infer) fail(raw.pos, "inference variables are only allowed in goals");
                return Type::infer(raw.infer_index);
            case K::Ref: return Type::ref(raw.region, raw.mutable_ref, resolve_type(raw.args.front(), scope));
            case K::Tuple: {
                Type acc = resolve_type(raw.args.back(), scope);
                for (std::size_t i = raw.args.size() - 1; i-- > 0;) {
                    acc = Type::tuple(resolve_type(raw.args[i], scope), std::move(acc));
                }
                return acc;
            }
            case K::Fn: {
                Type result = resolve_type(raw.extra.front(), scope);
                auto arity = static_cast<std::uint32_t>(raw.args.size());
                if (arity == 0) return Type::function(Type::unit(), std::move(result), 0);
                for (std::size_t i = raw.args.size(); i-- > 1;) {
                    result = Type::function(resolve_type(raw.args[i], scope), std::move(result), 1);
                }
                return Type::function(resolve_type(raw.args.front(), scope), std::move(result), arity);
            }
            case K::Proj: {
                Projection p;
                p.self_type = resolve_type(raw.args.front(), scope);
                p.instance = resolve_trait_ref(raw.trait, scope);
                const auto& assocs = assocs_by_trait_[p.instance.trait.value];
                auto it = assocs.find(raw.assoc);
                if (it == assocs.end()) {
                    fail(raw.pos, "trait `" + symbols_[p.instance.trait.value].path +
                                      "` has no associated type `" + raw.assoc + "`");
                }
                p.assoc = it->second;
                for (const auto& a : raw.extra) p.type_args.push_back(resolve_type(a, scope));
                p.region_args = raw.regions;
                return Type::projection(std::move(p));
            }
            case K::Dyn: {
                std::vector<Predicate> bounds;
                Type binder = Type::var(kDynBinder);
                for (const auto& b : raw.bounds) {
                    if (b.region) {
                        bounds.emplace_back(Outlives{binder, *b.region});
                    } else {
                        bounds.emplace_back(TraitBound{binder, resolve_trait_ref(*b.trait, scope)});
                    }
                }
                return Type::existential(kDynBinder, std::move(bounds));
            }
            case K::Path: break;
        }
        if (!raw.path.absolute && raw.path.segments.size() == 1) {
            const auto& name = raw.path.segments.front();
            if (name == "Self" && (scope.self_type || scope.self_is_var)) {
                if (!raw.args.empty()) fail(raw.pos, "`Self` takes no arguments");
                return scope.self_type ? *scope.self_type : Type::var("Self");
            }
            if (scope.type_vars.contains(name)) {
                if (!raw.args.empty()) fail(raw.pos, "type parameter `" + name + "` takes no arguments");
                return Type::var(name);
            }
        }
        SymbolId head = resolve_symbol(raw.path, scope.module, SymbolKind::Newtype);
        std::vector<Type> args;
        for (const auto& a : raw.args) args.push_back(resolve_type(a, scope));
        return Type::ctor(head, std::move(args));
    }

    Predicate resolve_predicate(const RawPredicate& raw, const Scope& scope) {
        switch (raw.kind) {
            case RawPredicate::Kind::Bound:
                return TraitBound{resolve_type(raw.lhs, scope), resolve_trait_ref(raw.trait, scope)};
            case RawPredicate::Kind::Outlives: return Outlives{resolve_type(raw.lhs, scope), raw.region};
            case RawPredicate::Kind::ProjEq: {
                Type lhs = resolve_type(raw.lhs, scope);
                return ProjectionEq{lhs.as<ProjType>()->projection, resolve_type(raw.rhs, scope)};
            }
        }
        return TraitBound{};
    }

    Params resolve_params(const RawParams& raw, Scope& scope) {
        Params params;
        params.region_binders = raw.regions;
        std::set<std::string> seen;
        for (const auto& name : raw.types) {
            if (!seen.insert(name).second) fail(Pos{}, "duplicate type parameter `" + name + "`");
            params.type_binders.push_back(name);
            scope.type_vars.insert(name);
        }
        for (const auto& w : raw.where) params.where_clauses.push_back(resolve_predicate(w, scope));
        return params;
    }

    NewtypeDecl resolve_newtype(const RawNewtype& raw, const RawItem& item) {
        Scope scope;
        scope.module = item.module;
        NewtypeDecl n;
        n.head = *find(qualify(item.module, raw.name));
        n.params = resolve_params(raw.params, scope);
        n.body = resolve_type(raw.body, scope);
        return n;
    }

    TraitDecl resolve_trait(const RawTrait& raw, const RawItem& item) {
        Scope scope;
        scope.module = item.module;
        scope.self_is_var = true;
        TraitDecl t;
        t.name = *find(qualify(item.module, raw.name));
        t.params = resolve_params(raw.params, scope);
        t.callable_arity = raw.callable;
        for (const auto& a : raw.assocs) {
            Scope inner = scope;
            t.assoc_decls.push_back(AssocDecl{assocs_by_trait_[t.name.value].at(a.name), resolve_params(a.params, inner)});
        }
        return t;
    }

    ImplBlock resolve_impl(const RawImpl& raw, const RawItem& item, ImplId id) {
        Scope scope;
        scope.module = item.module;
        for (const auto& name : raw.params.types) scope.type_vars.insert(name);
        ImplBlock impl;
        impl.id = id;
        impl.self_type = resolve_type(raw.self, scope);
        scope.self_type = impl.self_type;
        scope.type_vars.clear();
        impl.params = resolve_params(raw.params, scope);
        impl.instance = resolve_trait_ref(raw.trait, scope);
        const auto& assocs = assocs_by_trait_[impl.instance.trait.value];
        std::set<std::string> bound;
        for (const auto& b : raw.bindings) {
            auto it = assocs.find(b.name);
            if (it == assocs.end()) {
                fail(b.pos, "impl binds undeclared associated type `" + b.name + "` of trait `" +
                                symbols_[impl.instance.trait.value].path + "`");
            }
            if (!bound.insert(b.name).second) fail(b.pos, "associated type `" + b.name + "` bound twice");
            Scope inner = scope;
            Params params = resolve_params(b.params, inner);
            impl.assoc_bindings.push_back(AssocBinding{it->second, std::move(params), resolve_type(b.value, inner)});
        }
        return impl;
    }

    std::optional<SymbolId> find(const std::string& path) const {
        if (auto it = by_path_.find(path); it != by_path_.end()) return it->second;
        return std::nullopt;
    }

    std::string file_;
    Provenance provenance_default_;
    std::vector<SymbolInfo> symbols_;
    std::map<std::string, SymbolId> by_path_;
    std::map<std::uint32_t, std::map<std::string, SymbolId>> assocs_by_trait_;
};

}  // namespace

Context parse_context(std::string_view source, Provenance provenance_default, std::string file_name) {
    Parser parser(lex(source, file_name), file_name);
    auto items = parser.parse_program();
    return Resolver(std::move(file_name), provenance_default).run(items);
}

Context parse_file(const std::string& path, Provenance provenance_default) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open `" + path + "`");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_context(buffer.str(), provenance_default, path);
}

}  // namespace traitscope

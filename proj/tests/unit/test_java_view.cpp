#include <catch2/catch_amalgamated.hpp>

#include <regex>
#include <set>

#include "droidmut/java_view.hpp"
#include "test_util.hpp"

using namespace droidmut;

static SourceFile java_file(std::string content, std::string path = "src/T.java") {
    SourceFile f;
    f.relative_path = std::move(path);
    f.kind = FileKind::JavaSource;
    f.content = std::move(content);
    f.build_line_index();
    return f;
}

TEST_CASE("intent instantiation and declaration are recognized") {
    SourceFile f = java_file(
        "class T { void m() { Intent i = new Intent(this, Foo.class); } }");
    SyntaxView view = parse_java(f);

    REQUIRE(view.instantiations.size() == 1);
    const auto& inst = view.instantiations[0];
    CHECK(inst.class_name == "Intent");
    REQUIRE(inst.argument_spans.size() == 2);
    CHECK(f.slice(inst.span) == "new Intent(this, Foo.class)");
    CHECK(f.slice(inst.argument_spans[0]) == "this");
    CHECK(f.slice(inst.argument_spans[1]) == "Foo.class");

    REQUIRE(view.var_decls.size() == 1);
    CHECK(view.var_decls[0].name == "i");
    CHECK(view.var_decls[0].declared_type_name == "Intent");
    CHECK(view.var_decls[0].has_init);
    CHECK(f.slice(view.var_decls[0].statement_span) ==
          "Intent i = new Intent(this, Foo.class);");
}

TEST_CASE("final declarations and close calls are linked") {
    SourceFile f = java_file(
        "class T { void m(Db db) { final Cursor c = db.open(); c.close(); } }");
    SyntaxView view = parse_java(f);

    REQUIRE(view.var_decls.size() == 1);
    CHECK(view.var_decls[0].is_final);
    CHECK(view.var_decls[0].declared_type_name == "Cursor");

    const JavaInvocation* close = nullptr;
    for (const auto& inv : view.invocations)
        if (inv.method_name == "close") close = &inv;
    REQUIRE(close != nullptr);
    CHECK(close->receiver_text == "c");
    CHECK(f.slice(close->statement_span) == "c.close();");

    const auto* decl = view.find_var_decl("c", close->call_span.start);
    REQUIRE(decl != nullptr);
    CHECK(decl->is_final);
}

TEST_CASE("invocation count matches an independent regex oracle") {
    SourceFile f;
    f.relative_path = "DashboardActivity.java";
    f.kind = FileKind::JavaSource;
    f.content = testutil::read_file(testutil::fixtures_root() / "java" /
                                    "DashboardActivity.java");
    f.build_line_index();
    REQUIRE(!f.content.empty());

    // call-site oracle: every \w+( occurrence whose name is on the
    // fixture's hand-checked allowlist of invoked library methods
    static const std::set<std::string> allowlist = {
        "abs", "add", "append", "charAt", "clear", "close", "containsKey",
        "currentTimeMillis", "equals", "findViewById", "format", "get", "getIntent",
        "getString", "getStringExtra", "getTag", "getText", "indexOf", "isEmpty",
        "length", "max", "min", "moveToNext", "parseInt", "println", "put", "putExtra",
        "rawQuery", "setEnabled", "setOnClickListener", "setTag", "setText", "size",
        "sleep", "startActivity", "substring", "toString", "trim", "valueOf"};
    std::regex call_site(R"((\w+)\s*\()");
    std::size_t expected = 0;
    for (std::sregex_iterator it(f.content.begin(), f.content.end(), call_site), end;
         it != end; ++it)
        if (allowlist.count((*it)[1].str())) ++expected;

    SyntaxView view = parse_java(f);
    CHECK(view.invocations.size() == expected);
    for (const auto& inv : view.invocations) CHECK(allowlist.count(inv.method_name) == 1);
}

TEST_CASE("recorded spans slice back to the text they claim") {
    SourceFile f;
    f.relative_path = "DashboardActivity.java";
    f.kind = FileKind::JavaSource;
    f.content = testutil::read_file(testutil::fixtures_root() / "java" /
                                    "DashboardActivity.java");
    f.build_line_index();
    SyntaxView view = parse_java(f);

    for (const auto& inv : view.invocations) {
        auto call = f.slice(inv.call_span);
        CHECK(call.find(inv.method_name) != std::string_view::npos);
        CHECK(call.back() == ')');
        if (inv.statement_span.end != 0) {
            CHECK(inv.statement_span.start <= inv.call_span.start);
            CHECK(inv.call_span.end <= inv.statement_span.end);
        }
    }
    for (const auto& lit : view.string_literals) {
        auto text = f.slice(lit.span);
        CHECK(text.front() == '"');
        CHECK(text.back() == '"');
        CHECK(text.substr(1, text.size() - 2) == lit.value);
    }
    for (const auto& v : view.var_decls) {
        auto stmt = f.slice(v.statement_span);
        CHECK(stmt.back() == ';');
        if (v.has_init) CHECK(v.statement_span.contains(v.init_span));
    }
    for (const auto& m : view.method_decls) {
        if (!m.has_body) continue;
        auto body = f.slice(m.body_span);
        CHECK(body.front() == '{');
        CHECK(body.back() == '}');
    }
}

TEST_CASE("comments and string literals never produce call sites") {
    SourceFile f = java_file(
        "class T {\n"
        "    // c.close(); not real\n"
        "    /* also fake: db.rawQuery(\"x\", null); */\n"
        "    String s = \"fake.close()\";\n"
        "    void m() { real.close(); }\n"
        "}");
    SyntaxView view = parse_java(f);
    REQUIRE(view.invocations.size() == 1);
    CHECK(view.invocations[0].receiver_text == "real");
    REQUIRE(view.string_literals.size() == 1);
    CHECK(view.string_literals[0].value == "fake.close()");
}

TEST_CASE("anonymous listener classes expose their methods") {
    SourceFile f = java_file(
        "class T { void m(View b) {\n"
        "    b.setOnClickListener(new View.OnClickListener() {\n"
        "        @Override\n"
        "        public void onClick(View v) { v.setEnabled(false); }\n"
        "    });\n"
        "} }");
    SyntaxView view = parse_java(f);

    const JavaMethodDecl* on_click = nullptr;
    for (const auto& m : view.method_decls)
        if (m.name == "onClick") on_click = &m;
    REQUIRE(on_click != nullptr);
    CHECK(on_click->has_body);
    CHECK(on_click->is_override);
    CHECK(contains(on_click->enclosing_class, "anon:OnClickListener"));
    CHECK(f.slice(on_click->body_span) == "{ v.setEnabled(false); }");

    // the nested call inside the anonymous body is still recorded
    bool saw_set_enabled = false;
    for (const auto& inv : view.invocations)
        if (inv.method_name == "setEnabled") saw_set_enabled = true;
    CHECK(saw_set_enabled);
}

TEST_CASE("implements clause records names and spans") {
    SourceFile f = java_file(
        "class P implements android.os.Parcelable, Comparable<P> {\n"
        "    @Override public int describeContents() { return 0; }\n"
        "    @Override public void writeToParcel(Parcel d, int f) { }\n"
        "}");
    SyntaxView view = parse_java(f);
    REQUIRE(view.class_decls.size() == 1);
    const auto& c = view.class_decls[0];
    REQUIRE(c.implements.size() == 2);
    CHECK(c.implements[0].name == "android.os.Parcelable");
    CHECK(f.slice(c.implements[0].span) == "android.os.Parcelable");
    CHECK(c.implements[1].name == "Comparable");
    CHECK(f.slice(c.implements[1].span) == "Comparable<P>");
    CHECK(f.slice(c.implements_clause_span) ==
          "implements android.os.Parcelable, Comparable<P>");
    CHECK(c.override_annotation_spans.size() == 2);

    const JavaMethodDecl* wtp = nullptr;
    for (const auto& m : view.method_decls)
        if (m.name == "writeToParcel") wtp = &m;
    REQUIRE(wtp != nullptr);
    CHECK(wtp->is_override);
    CHECK(f.slice(wtp->override_annotation_span) == "@Override");
}

TEST_CASE("generic declarations keep the base type name") {
    SourceFile f = java_file(
        "class T { void m() { Map<String, List<String>> index = new HashMap<>(); } }");
    SyntaxView view = parse_java(f);
    REQUIRE(view.var_decls.size() == 1);
    CHECK(view.var_decls[0].name == "index");
    CHECK(view.var_decls[0].declared_type_name == "Map");
    REQUIRE(view.instantiations.size() == 1);
    CHECK(view.instantiations[0].class_name == "HashMap");
}

TEST_CASE("assignments record the lvalue and statement") {
    SourceFile f = java_file("class T { void m(Db db) { c = db.rawQuery(\"q\", null); } }");
    SyntaxView view = parse_java(f);
    REQUIRE(view.assignments.size() == 1);
    CHECK(view.assignments[0].lhs_name == "c");
    CHECK(f.slice(view.assignments[0].statement_span) == "c = db.rawQuery(\"q\", null);");
    CHECK(f.slice(view.assignments[0].rhs_span) == "db.rawQuery(\"q\", null)");
}

TEST_CASE("comparisons are not mistaken for declarations or generics") {
    SourceFile f = java_file(
        "class T { int m(int a, int b) { if (a < b) { return a; } return b; } }");
    SyntaxView view = parse_java(f);
    CHECK(view.var_decls.empty());
    CHECK(view.invocations.empty());
}

TEST_CASE("unterminated constructs raise parse failures") {
    CHECK_THROWS_AS(parse_java(java_file("class T { String s = \"unterminated; }")),
                    ParseFailure);
    CHECK_THROWS_AS(parse_java(java_file("class T { /* no end")), ParseFailure);
    CHECK_THROWS_AS(parse_java(java_file("class T { void m() { ")), ParseFailure);
}

TEST_CASE("method parameters resolve types for receiver lookups") {
    SourceFile f = java_file(
        "class T { void m(HttpURLConnection conn) { conn.setConnectTimeout(5); } }");
    SyntaxView view = parse_java(f);
    REQUIRE(view.invocations.size() == 1);
    auto type = view.declared_type_of("conn", view.invocations[0].call_span.start);
    REQUIRE(type.has_value());
    CHECK(*type == "HttpURLConnection");
}

TEST_CASE("parsing is pure") {
    SourceFile f = java_file(testutil::read_file(testutil::fixtures_root() / "omni" /
                                                 "src/com/omni/fixture/StorageGateway.java"),
                             "StorageGateway.java");
    SyntaxView a = parse_java(f);
    SyntaxView b = parse_java(f);
    REQUIRE(a.invocations.size() == b.invocations.size());
    for (std::size_t i = 0; i < a.invocations.size(); ++i) {
        CHECK(a.invocations[i].call_span == b.invocations[i].call_span);
        CHECK(a.invocations[i].method_name == b.invocations[i].method_name);
    }
    CHECK(a.var_decls.size() == b.var_decls.size());
    CHECK(a.string_literals.size() == b.string_literals.size());
}

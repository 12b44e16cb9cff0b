#include <CLI11.hpp>

#include "twistchar/twistchar.h"

#include <fstream>
#include <iostream>
#include <string>

namespace {

struct CommonOpts {
    std::string type;
    std::string trunc = "0";
    std::string format = "pretty";
    std::string out;
    std::string cache_dir;
    int level = 1;
    bool no_cache = false;
    int jobs = 0;
    long long ball_slack = 0;
};

twc_options make_options(const CommonOpts& o) {
    twc_options opts;
    opts.cache_dir = o.cache_dir.empty() ? nullptr : o.cache_dir.c_str();
    opts.no_cache = o.no_cache ? 1 : 0;
    opts.jobs = o.jobs;
    opts.ball_slack = o.ball_slack;
    return opts;
}

int report_error() {
    const char* msg = twc_last_error();
    std::cerr << "error: " << (msg && *msg ? msg : "unknown failure") << '\n';
    return 2;
}

void print_text(const char* text) {
    std::string t = text ? text : "";
    if (t.empty() || t.back() != '\n') t += '\n';
    std::cout << t;
}

int run_series(const CommonOpts& o, const std::string& kind, bool to_file) {
    twc_folded* folded = nullptr;
    if (twc_folded_create(o.type.c_str(), &folded) != TWC_OK) return report_error();
    twc_options opts = make_options(o);
    twc_series* series = nullptr;
    twc_status st = twc_char(folded, kind.c_str(), o.level, o.trunc.c_str(), &opts, &series);
    twc_folded_free(folded);
    if (st != TWC_OK) return report_error();
    char* text = nullptr;
    st = twc_series_format(series, o.format.c_str(), &text);
    twc_series_free(series);
    if (st != TWC_OK) return report_error();
    int rc = 0;
    if (to_file) {
        std::ofstream out(o.out, std::ios::binary | std::ios::trunc);
        if (!out) {
            std::cerr << "error: cannot write " << o.out << '\n';
            rc = 2;
        } else {
            out << text;
        }
    } else {
        print_text(text);
    }
    twc_string_free(text);
    return rc;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact characters of twisted affine types"};
    app.require_subcommand(1);

    CommonOpts o;
    std::string kind;

    auto add_common = [&](CLI::App* cmd, bool need_trunc) {
        cmd->add_option("--type", o.type, "type token, e.g. A3^2, D5^2, E6^2, D4^3, untwisted:A1")
            ->required();
        cmd->add_option("--level", o.level, "module level k >= 1");
        auto* tr = cmd->add_option("--trunc", o.trunc, "energy truncation, rational n or n/d");
        if (need_trunc) tr->required();
        cmd->add_option("--format", o.format, "json, csv or pretty")
            ->check(CLI::IsMember({"json", "csv", "pretty"}));
        cmd->add_option("--cache-dir", o.cache_dir, "multiplicity cache directory");
        cmd->add_flag("--no-cache", o.no_cache, "disable the multiplicity cache");
        cmd->add_option("--jobs", o.jobs, "worker cap; results are identical for any value");
        cmd->add_option("--ball-slack", o.ball_slack,
                        "extra squared radius on the translation ball");
    };

    CLI::App* fold_cmd = app.add_subcommand("fold", "print the folded lattice data");
    add_common(fold_cmd, false);

    CLI::App* char_cmd = app.add_subcommand("char", "print a character series");
    char_cmd
        ->add_option("kind", kind,
                     "theta|fock|level1|principal|principal-enum|parafermionic|"
                     "parafermionic-enum|module|oracle")
        ->required();
    add_common(char_cmd, true);

    CLI::App* verify_cmd = app.add_subcommand("verify", "run the verification matrix");
    add_common(verify_cmd, true);

    CLI::App* export_cmd = app.add_subcommand("export", "write a character series to a file");
    export_cmd->add_option("kind", kind, "series kind as in char")->required();
    add_common(export_cmd, true);
    export_cmd->add_option("--out", o.out, "output path")->required();

    CLI::App* cache_cmd = app.add_subcommand("cache", "manage the multiplicity cache");
    cache_cmd->require_subcommand(1);
    std::string cache_dir_flag;
    CLI::App* cache_stat_cmd = cache_cmd->add_subcommand("stat", "list cache entries");
    cache_stat_cmd->add_option("--cache-dir", cache_dir_flag, "multiplicity cache directory");
    CLI::App* cache_clear_cmd = cache_cmd->add_subcommand("clear", "remove cache entries");
    cache_clear_cmd->add_option("--cache-dir", cache_dir_flag, "multiplicity cache directory");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    if (fold_cmd->parsed()) {
        twc_folded* folded = nullptr;
        if (twc_folded_create(o.type.c_str(), &folded) != TWC_OK) return report_error();
        char* text = nullptr;
        twc_status st = twc_folded_to_json(folded, &text);
        twc_folded_free(folded);
        if (st != TWC_OK) return report_error();
        print_text(text);
        twc_string_free(text);
        return 0;
    }
    if (char_cmd->parsed()) return run_series(o, kind, false);
    if (export_cmd->parsed()) return run_series(o, kind, true);
    if (verify_cmd->parsed()) {
        twc_options opts = make_options(o);
        char* report = nullptr;
        int all_pass = 0;
        if (twc_verify(o.type.c_str(), o.level, o.trunc.c_str(), &opts, &report, &all_pass) !=
            TWC_OK)
            return report_error();
        print_text(report);
        twc_string_free(report);
        return all_pass ? 0 : 1;
    }
    if (cache_stat_cmd->parsed()) {
        char* text = nullptr;
        if (twc_cache_stat(cache_dir_flag.empty() ? nullptr : cache_dir_flag.c_str(), &text) !=
            TWC_OK)
            return report_error();
        print_text(text);
        twc_string_free(text);
        return 0;
    }
    if (cache_clear_cmd->parsed()) {
        long long removed = 0;
        if (twc_cache_clear(cache_dir_flag.empty() ? nullptr : cache_dir_flag.c_str(), &removed) !=
            TWC_OK)
            return report_error();
        std::cout << "{\"removed\":" << removed << "}\n";
        return 0;
    }
    return 2;
}

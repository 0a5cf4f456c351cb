// Command-line workbench: ingest corpora, generate synthetic key sets with
// planted shared prefixes, run instrumented workloads over the dictionary
// structures, and audit structural invariants.
#include <CLI11.hpp>

#include <cstdint>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "lcpkit/reference_oracle.hpp"
#include "lcpkit/string_btree.hpp"
#include "lcpkit/workbench.hpp"
#include "lcpkit/zip_trie.hpp"

namespace {

using namespace lcpkit;

Alphabet parse_alphabet(const std::string& name) {
    if (name == "bytes") return Alphabet::bytes();
    if (name == "dna") return Alphabet::dna();
    throw CLI::ValidationError("--alphabet", "expected 'bytes' or 'dna', got '" + name + "'");
}

CorpusFormat parse_format(const std::string& name) {
    if (name == "lines") return CorpusFormat::Lines;
    if (name == "fasta") return CorpusFormat::Fasta;
    throw CLI::ValidationError("--format", "expected 'lines' or 'fasta', got '" + name + "'");
}

ChunkPolicy parse_policy(const std::string& name) {
    if (name == "none") return ChunkPolicy::None;
    if (name == "fixed") return ChunkPolicy::Fixed;
    if (name == "adaptive") return ChunkPolicy::Adaptive;
    throw CLI::ValidationError("--policy",
                               "expected 'none', 'fixed' or 'adaptive', got '" + name + "'");
}

// Shared corpus-input flags for the subcommands that read one.
struct CorpusArgs {
    std::string path;
    std::string format = "lines";
    std::string alphabet = "bytes";

    void attach(CLI::App& cmd) {
        cmd.add_option("path", path, "corpus file")->required();
        cmd.add_option("--format", format, "corpus format: lines | fasta")
            ->default_str("lines");
        cmd.add_option("--alphabet", alphabet, "key alphabet: bytes | dna")
            ->default_str("bytes");
    }
    [[nodiscard]] Corpus load() const {
        return ingest_file(path, parse_format(format), parse_alphabet(alphabet));
    }
};

// Structure selection shared by run and audit.  --structure picks the
// dictionary and its default metadata mode; an explicit --mode overrides the
// default (mi-zt is exact by definition and rejects --mode approx).
struct StructureArgs {
    std::string structure = "mi-zt";
    std::string mode;
    std::string policy = "none";
    std::uint64_t f = 32;
    std::size_t block_words = 16;
    std::size_t fanout = 8;
    std::uint64_t seed = 0;

    void attach(CLI::App& cmd) {
        cmd.add_option("--structure", structure, "dictionary: mi-zt | zt | sbt")
            ->default_str("mi-zt");
        cmd.add_option("--mode", mode, "metadata mode: exact | approx");
        cmd.add_option("--policy", policy, "comparison schedule: none | fixed | adaptive")
            ->default_str("none");
        cmd.add_option("--f", f, "metadata precision / fixed chunk count")->default_str("32");
        cmd.add_option("--B", block_words, "external-memory block size in words")
            ->default_str("16");
        cmd.add_option("--fanout", fanout, "B-tree fanout")->default_str("8");
        cmd.add_option("--seed", seed, "workload and priority seed")
            ->envname("LCPKIT_SEED")
            ->default_str("0");
    }
    [[nodiscard]] LcpMode resolve_mode() const {
        if (structure != "mi-zt" && structure != "zt" && structure != "sbt")
            throw CLI::ValidationError("--structure",
                                       "expected 'mi-zt', 'zt' or 'sbt', got '" + structure + "'");
        if (mode.empty()) return structure == "zt" ? LcpMode::Approx : LcpMode::Exact;
        if (mode == "exact") return LcpMode::Exact;
        if (mode == "approx") {
            if (structure == "mi-zt")
                throw CLI::ValidationError("--mode", "mi-zt carries exact metadata by definition");
            return LcpMode::Approx;
        }
        throw CLI::ValidationError("--mode", "expected 'exact' or 'approx', got '" + mode + "'");
    }
};

int cmd_ingest(const CorpusArgs& args) {
    const Corpus corpus = args.load();
    const CorpusStats st = corpus.stats();
    std::uint64_t total = 0;
    std::uint64_t longest = 0;
    for (const std::uint64_t l : st.lengths) {
        total += l;
        longest = std::max(longest, l);
    }
    std::cout << "records:        " << corpus.size() << '\n'
              << "alphabet:       " << args.alphabet << '\n'
              << "total chars:    " << total << '\n'
              << "longest key:    " << longest << '\n'
              << "median length:  " << st.median_length << '\n'
              << "median max-lcp: " << st.median_max_lcp << '\n';
    return 0;
}

void write_fasta(std::ostream& os, const Corpus& corpus) {
    for (const CorpusRecord& rec : corpus.records) {
        os << '>' << rec.id << '\n';
        const std::string seq = rec.key.unpack();
        for (std::size_t at = 0; at < seq.size(); at += 70)
            os << seq.substr(at, 70) << '\n';
        if (seq.empty()) continue;
    }
}

int cmd_synth(const SynthSpec& spec, const std::string& out_path) {
    const Corpus corpus = synth(spec);
    if (out_path.empty()) {
        write_fasta(std::cout, corpus);
        return 0;
    }
    std::ofstream out(out_path);
    if (!out.is_open()) {
        std::cerr << "error: cannot open '" << out_path << "' for writing\n";
        return 1;
    }
    write_fasta(out, corpus);
    std::cerr << "wrote " << corpus.size() << " records to " << out_path << '\n';
    return 0;
}

int cmd_run(const CorpusArgs& corpus_args, const StructureArgs& sargs, WorkloadSpec w,
            const std::string& csv_out) {
    const Corpus corpus = corpus_args.load();
    w.use_btree = sargs.structure == "sbt";
    w.mode = sargs.resolve_mode();
    w.policy = parse_policy(sargs.policy);
    w.f = sargs.f;
    w.block_words = sargs.block_words;
    w.fanout = sargs.fanout;
    w.seed = sargs.seed;

    const RunReport rep = run_workload(corpus, w);
    if (csv_out.empty()) {
        std::cout << rep.csv();
    } else {
        std::ofstream out(csv_out);
        if (!out.is_open()) {
            std::cerr << "error: cannot open '" << csv_out << "' for writing\n";
            return 1;
        }
        out << rep.csv();
        std::cerr << "wrote " << rep.rows.size() << " rows to " << csv_out << '\n';
    }
    if (w.oracle_check) {
        std::cerr << "oracle check: " << rep.divergences << " divergence(s) over "
                  << rep.rows.size() << " operations\n";
        if (rep.divergences > 0) return 2;
    }
    return 0;
}

int cmd_audit(const CorpusArgs& corpus_args, const StructureArgs& sargs) {
    const Corpus corpus = corpus_args.load();
    const LcpMode mode = sargs.resolve_mode();
    if (sargs.structure == "sbt") {
        OracleDict dedup;
        for (const CorpusRecord& rec : corpus.records) (void)dedup.insert(rec.key.unpack());
        std::vector<PackedKey> keys;
        keys.reserve(dedup.size());
        for (const std::string& k : dedup.keys())
            keys.push_back(PackedKey::pack(k, corpus.alphabet));
        SbtConfig cfg;
        cfg.block_words = sargs.block_words;
        cfg.fanout = sargs.fanout;
        cfg.mode = mode;
        cfg.codec.f = sargs.f;
        const StringBtree tree = StringBtree::build(std::move(keys), cfg);
        std::cout << tree.stats_csv();
        std::cerr << "build invariants hold for " << tree.size() << " keys\n";
        return 0;
    }
    TrieConfig cfg;
    cfg.mode = mode;
    cfg.codec.f = sargs.f;
    cfg.seed = sargs.seed;
    ZipTrie trie(cfg);
    for (const CorpusRecord& rec : corpus.records) (void)trie.insert(rec.key);
    const AuditReport report = ancestor_audit(trie);
    for (const AuditIssue& issue : report.issues)
        std::cout << "issue: key '" << (issue.node ? issue.node->key.unpack() : std::string{})
                  << "' field " << issue.field << ": " << issue.detail << '\n';
    std::cout << (report.ok() ? "audit ok" : "audit FAILED") << " (" << report.nodes_checked
              << " nodes checked, " << report.issues.size() << " issue(s))\n";
    return report.ok() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"String-dictionary workbench: zip tries, parallel comparison schedules, "
                 "and a static string B-tree with instrumented cost accounting"};
    app.require_subcommand(1);

    // ingest -----------------------------------------------------------------
    CorpusArgs ingest_args;
    CLI::App* ingest_cmd = app.add_subcommand("ingest", "parse a corpus and report its shape");
    ingest_args.attach(*ingest_cmd);

    // synth ------------------------------------------------------------------
    SynthSpec synth_spec;
    std::string synth_alphabet = "bytes";
    std::string synth_out;
    CLI::App* synth_cmd =
        app.add_subcommand("synth", "generate a corpus with planted shared-prefix depths");
    synth_cmd->add_option("--n", synth_spec.n, "number of keys")->default_str("1024");
    synth_cmd->add_option("--buckets", synth_spec.lcp_buckets,
                          "planted shared-prefix depths (repeat or comma-separate)")
        ->delimiter(',');
    synth_cmd->add_option("--tail-lo", synth_spec.tail_lo, "minimum random tail length")
        ->default_str("16");
    synth_cmd->add_option("--tail-hi", synth_spec.tail_hi, "maximum random tail length")
        ->default_str("64");
    synth_cmd->add_option("--seed", synth_spec.seed, "generator seed")
        ->envname("LCPKIT_SEED")
        ->default_str("0");
    synth_cmd->add_option("--alphabet", synth_alphabet, "key alphabet: bytes | dna")
        ->default_str("bytes");
    synth_cmd->add_option("--out", synth_out, "output path (fasta; stdout when omitted)");

    // run --------------------------------------------------------------------
    CorpusArgs run_corpus;
    StructureArgs run_structure;
    WorkloadSpec run_spec;
    std::string run_csv_out;
    CLI::App* run_cmd = app.add_subcommand("run", "execute an instrumented workload");
    run_corpus.attach(*run_cmd);
    run_structure.attach(*run_cmd);
    run_cmd->add_option("--ops", run_spec.ops, "operations per repetition")->default_str("1000");
    run_cmd->add_option("--reps", run_spec.reps, "repetitions with derived seeds")
        ->default_str("1");
    run_cmd->add_option("--search", run_spec.search, "search proportion")->default_str("1");
    run_cmd->add_option("--insert", run_spec.insert, "insert proportion")->default_str("0");
    run_cmd->add_option("--delete", run_spec.erase, "delete proportion")->default_str("0");
    run_cmd->add_option("--prefix", run_spec.prefix, "prefix-enumeration proportion")
        ->default_str("0");
    run_cmd->add_option("--range", run_spec.range, "range-enumeration proportion")
        ->default_str("0");
    run_cmd->add_option("--csv-out", run_csv_out, "CSV output path (stdout when omitted)");
    run_cmd->add_flag("--oracle-check", run_spec.oracle_check,
                      "verify every result against the brute-force oracle");

    // audit ------------------------------------------------------------------
    CorpusArgs audit_corpus;
    StructureArgs audit_structure;
    CLI::App* audit_cmd =
        app.add_subcommand("audit", "build a structure from a corpus and verify its invariants");
    audit_corpus.attach(*audit_cmd);
    audit_structure.attach(*audit_cmd);

    CLI11_PARSE(app, argc, argv);

    try {
        if (ingest_cmd->parsed()) return cmd_ingest(ingest_args);
        if (synth_cmd->parsed()) {
            synth_spec.alphabet = parse_alphabet(synth_alphabet);
            return cmd_synth(synth_spec, synth_out);
        }
        if (run_cmd->parsed()) return cmd_run(run_corpus, run_structure, run_spec, run_csv_out);
        if (audit_cmd->parsed()) return cmd_audit(audit_corpus, audit_structure);
    } catch (const CLI::ValidationError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}

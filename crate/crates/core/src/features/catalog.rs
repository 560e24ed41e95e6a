use alloc::string::String;
use alloc::vec::Vec;

use serde::{Deserialize, Serialize};

use crate::fingerprint::fnv1a_hex;

/// Everything the feature detectors consult: the elementary subset of the
/// languages plus the library names used to resolve calls.
///
/// The defaults describe what is taught in the first weeks of an
/// introductory Java course, with the Python and C++ spellings of the same
/// constructs alongside.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default)]
pub struct ElementaryCatalog {
    /// Scalar types; arrays of these up to `max_array_rank` are elementary too.
    pub types: Vec<String>,
    pub max_array_rank: usize,
    pub operators: Vec<String>,
    /// Members that are elementary on any receiver (`s.charAt(i)`, `a.length`).
    pub methods: Vec<String>,
    pub control: Vec<String>,
    /// Modifiers, literals and boolean words that carry no feature weight.
    pub keywords: Vec<String>,
    /// Console output, as dotted paths or bare names.
    pub io: Vec<String>,
    /// Unqualified functions that count as elementary (`range`, `len`).
    pub functions: Vec<String>,
    pub math_receivers: Vec<String>,
    /// Unqualified or `std::`-qualified math functions.
    pub math_functions: Vec<String>,
    pub extra_control: Vec<String>,
    pub exception_words: Vec<String>,
    pub class_words: Vec<String>,
    pub wrapper_classes: Vec<String>,
    pub generic_classes: Vec<String>,
    /// Other library functions and methods called without a receiver.
    pub builtin_functions: Vec<String>,
}

fn strings(items: &[&str]) -> Vec<String> {
    items.iter().map(|s| String::from(*s)).collect()
}

impl Default for ElementaryCatalog {
    fn default() -> Self {
        Self {
            types: strings(&[
                "int", "float", "double", "boolean", "bool", "char", "String", "string", "void",
            ]),
            max_array_rank: 2,
            operators: strings(&[
                "+", "-", "*", "/", "%", "=", "+=", "-=", "*=", "/=", "%=", "++", "--", "==", "!=",
                "<", ">", "<=", ">=", "&&", "||", "!", "?", ":", "**", "//", "**=", "//=",
            ]),
            methods: strings(&["charAt", "length"]),
            control: strings(&[
                "if", "else", "while", "for", "return", "elif", "in", "pass", "repeat",
            ]),
            keywords: strings(&[
                "public",
                "private",
                "protected",
                "static",
                "final",
                "true",
                "false",
                "null",
                "def",
                "and",
                "or",
                "not",
                "True",
                "False",
                "None",
            ]),
            io: strings(&[
                "System.out.print",
                "System.out.println",
                "print",
                "cout",
                "endl",
                "std.cout",
                "std.endl",
            ]),
            functions: strings(&["range", "len"]),
            math_receivers: strings(&["Math", "math"]),
            math_functions: strings(&[
                "max", "min", "abs", "sqrt", "pow", "floor", "ceil", "exp", "log", "log2", "log10",
                "sin", "cos", "tan", "round", "hypot", "fabs", "cbrt",
            ]),
            extra_control: strings(&[
                "break", "continue", "case", "switch", "default", "do", "goto", "try", "catch",
            ]),
            exception_words: strings(&[
                "try", "catch", "finally", "throw", "throws", "except", "raise",
            ]),
            class_words: strings(&["class", "interface", "enum", "struct", "union"]),
            wrapper_classes: strings(&[
                "Integer",
                "Character",
                "Long",
                "Double",
                "Float",
                "Boolean",
                "Byte",
                "Short",
                "Arrays",
                "Collections",
                "String",
                "Objects",
            ]),
            generic_classes: strings(&[
                "Vector",
                "HashMap",
                "Stack",
                "List",
                "LinkedHashSet",
                "Queue",
                "StringBuffer",
                "StringBuilder",
                "ArrayList",
                "LinkedList",
                "HashSet",
                "TreeSet",
                "TreeMap",
                "Map",
                "Set",
                "Deque",
                "ArrayDeque",
                "PriorityQueue",
                "Iterator",
                "Hashtable",
                "LinkedHashMap",
                "BitSet",
                "vector",
                "map",
                "set",
                "unordered_map",
                "unordered_set",
                "stack",
                "queue",
                "deque",
                "list",
                "priority_queue",
                "pair",
                "multiset",
                "multimap",
                "greater",
                "less",
            ]),
            builtin_functions: strings(&[
                "sort",
                "swap",
                "reverse",
                "memset",
                "strlen",
                "accumulate",
                "fill",
                "lower_bound",
                "upper_bound",
                "__gcd",
                "to_string",
                "stoi",
                "make_pair",
                "sorted",
                "sum",
                "int",
                "str",
                "float",
                "ord",
                "chr",
                "list",
                "set",
                "dict",
                "map",
                "zip",
                "enumerate",
                "bin",
                "any",
                "all",
                "reversed",
                "divmod",
                "input",
            ]),
        }
    }
}

fn has(list: &[String], word: &str) -> bool {
    list.iter().any(|s| s == word)
}

impl ElementaryCatalog {
    pub fn is_type(&self, word: &str) -> bool {
        has(&self.types, word)
    }

    pub fn is_operator(&self, op: &str) -> bool {
        has(&self.operators, op)
    }

    pub fn is_method(&self, name: &str) -> bool {
        has(&self.methods, name)
    }

    pub fn is_elementary_keyword(&self, word: &str) -> bool {
        has(&self.control, word) || has(&self.keywords, word) || self.is_type(word)
    }

    pub fn is_io(&self, path: &str) -> bool {
        has(&self.io, path)
    }

    pub fn is_function(&self, name: &str) -> bool {
        has(&self.functions, name)
    }

    pub fn is_math_receiver(&self, name: &str) -> bool {
        has(&self.math_receivers, name)
    }

    pub fn is_math_function(&self, name: &str) -> bool {
        has(&self.math_functions, name)
    }

    pub fn is_extra_control(&self, word: &str) -> bool {
        has(&self.extra_control, word)
    }

    pub fn is_exception_word(&self, word: &str) -> bool {
        has(&self.exception_words, word)
    }

    pub fn is_class_word(&self, word: &str) -> bool {
        has(&self.class_words, word)
    }

    pub fn is_wrapper(&self, name: &str) -> bool {
        has(&self.wrapper_classes, name)
    }

    pub fn is_generic_class(&self, name: &str) -> bool {
        has(&self.generic_classes, name)
    }

    pub fn is_builtin(&self, name: &str) -> bool {
        has(&self.builtin_functions, name)
    }

    /// Unqualified callees resolved as library calls.
    pub fn is_known_library(&self, name: &str) -> bool {
        self.is_io(name)
            || self.is_function(name)
            || self.is_math_function(name)
            || self.is_builtin(name)
            || self.is_wrapper(name)
            || self.is_generic_class(name)
    }

    /// Canonical one-field-per-line text; the fingerprint hashes this.
    pub fn canonical_text(&self) -> String {
        let fields: [(&str, &Vec<String>); 15] = [
            ("types", &self.types),
            ("operators", &self.operators),
            ("methods", &self.methods),
            ("control", &self.control),
            ("keywords", &self.keywords),
            ("io", &self.io),
            ("functions", &self.functions),
            ("math_receivers", &self.math_receivers),
            ("math_functions", &self.math_functions),
            ("extra_control", &self.extra_control),
            ("exception_words", &self.exception_words),
            ("class_words", &self.class_words),
            ("wrapper_classes", &self.wrapper_classes),
            ("generic_classes", &self.generic_classes),
            ("builtin_functions", &self.builtin_functions),
        ];
        let mut out = alloc::format!("max_array_rank={}\n", self.max_array_rank);
        for (name, values) in fields {
            let mut sorted: Vec<&str> = values.iter().map(String::as_str).collect();
            sorted.sort_unstable();
            sorted.dedup();
            out.push_str(name);
            out.push('=');
            out.push_str(&sorted.join(" "));
            out.push('\n');
        }
        out
    }

    pub fn fingerprint(&self) -> String {
        fnv1a_hex(self.canonical_text().as_bytes())
    }
}

#ifndef BAGCQ_ERROR_HH
#define BAGCQ_ERROR_HH

#include <stdexcept>
#include <string>

namespace bagcq
{
    enum class ErrorKind
    {
        SchemaMismatch,
        UninterpretedConstant,
        MalformedDatabase,
        UnsupportedInput,
        InvalidArgument,
        Precondition,
        Parse,
        Io
    };

    class Error : public std::runtime_error
    {
    private:
        ErrorKind _kind;

    public:
        Error(ErrorKind k, const std::string & what) :
            std::runtime_error(what),
            _kind(k)
        {
        }

        auto kind() const -> ErrorKind { return _kind; }
    };
}

#endif

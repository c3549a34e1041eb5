# select the best model with repeated evaluation
results = []
for clf, name in (
        (DecisionTreeClassifier(), "Decision Tree"),
        (Perceptron(), "Perceptron")):
    clf.fit(X_train, y_train)
    pred = clf.predict(X_test)
    score = metrics.accuracy_score(y_test, pred)
    results.append(score, name)
